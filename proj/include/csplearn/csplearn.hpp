#pragma once

// Umbrella header.

#include "csplearn/automata.hpp"
#include "csplearn/csp.hpp"
#include "csplearn/dnf.hpp"
#include "csplearn/error.hpp"
#include "csplearn/fraction.hpp"
#include "csplearn/io.hpp"
#include "csplearn/predicates.hpp"
#include "csplearn/reductions.hpp"
#include "csplearn/rng.hpp"
#include "csplearn/sample.hpp"
#include "csplearn/scatter.hpp"
#include "csplearn/stats.hpp"
