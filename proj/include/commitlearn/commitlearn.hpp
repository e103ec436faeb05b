#pragma once

#include "commitlearn/errors.hpp"
#include "commitlearn/rational.hpp"
#include "commitlearn/geometry.hpp"
#include "commitlearn/game.hpp"
#include "commitlearn/oracle.hpp"
#include "commitlearn/precision.hpp"
#include "commitlearn/random.hpp"
#include "commitlearn/sampler.hpp"
#include "commitlearn/search.hpp"
#include "commitlearn/finder.hpp"
#include "commitlearn/learner.hpp"
#include "commitlearn/baseline.hpp"
#include "commitlearn/generate.hpp"
#include "commitlearn/io.hpp"
#include "commitlearn/bench.hpp"
