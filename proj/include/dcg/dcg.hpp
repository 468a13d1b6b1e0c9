#pragma once

// Umbrella header for the coordinated mission/emitter routing library.

#include "instance.hpp"
#include "lp.hpp"
#include "paths.hpp"
#include "validate.hpp"
#include "rmp.hpp"
#include "windows.hpp"
#include "pricing_mission.hpp"
#include "pricing_emitting.hpp"
#include "greedy.hpp"
#include "engine.hpp"
#include "baselines.hpp"
#include "io.hpp"
#include "experiment.hpp"
#include "oracle.hpp"
