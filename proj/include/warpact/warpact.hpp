#pragma once

#include "warpact/community.hpp"
#include "warpact/compare.hpp"
#include "warpact/distance.hpp"
#include "warpact/errors.hpp"
#include "warpact/experiment.hpp"
#include "warpact/generators.hpp"
#include "warpact/graph.hpp"
#include "warpact/io.hpp"
#include "warpact/merge_map.hpp"
#include "warpact/netstats.hpp"
#include "warpact/parallel.hpp"
#include "warpact/powerlaw.hpp"
#include "warpact/random.hpp"
