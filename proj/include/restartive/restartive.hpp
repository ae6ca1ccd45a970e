#pragma once

#include "restartive/config.hpp"
#include "restartive/grad_check.hpp"
#include "restartive/harness.hpp"
#include "restartive/mnist.hpp"
#include "restartive/optimizers.hpp"
#include "restartive/oracle.hpp"
#include "restartive/problems.hpp"
#include "restartive/rng.hpp"
#include "restartive/schedules.hpp"
#include "restartive/trace.hpp"
#include "restartive/vec.hpp"
