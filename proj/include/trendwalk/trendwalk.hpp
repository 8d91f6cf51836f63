#pragma once

// Umbrella header. wire_http.hpp is deliberately left out; include it
// directly when you need the HTTP transport.

#include "trendwalk/campaign.hpp"
#include "trendwalk/generators.hpp"
#include "trendwalk/geweke.hpp"
#include "trendwalk/gml.hpp"
#include "trendwalk/graph.hpp"
#include "trendwalk/metropolis.hpp"
#include "trendwalk/pipeline.hpp"
#include "trendwalk/replay.hpp"
#include "trendwalk/rng.hpp"
#include "trendwalk/stats.hpp"
#include "trendwalk/walk.hpp"
#include "trendwalk/wire.hpp"
#include "trendwalk/world.hpp"
