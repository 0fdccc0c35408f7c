#pragma once

#include "intentkin/errors.hpp"
#include "intentkin/kinematics.hpp"
#include "intentkin/energy.hpp"
#include "intentkin/concepts.hpp"
#include "intentkin/aggregate.hpp"
#include "intentkin/random.hpp"
#include "intentkin/skeleton.hpp"
#include "intentkin/synth.hpp"
#include "intentkin/io.hpp"
#include "intentkin/svg.hpp"
