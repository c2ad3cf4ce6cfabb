#pragma once

#include "junta/boolean_cube.hpp"
#include "junta/distribution.hpp"
#include "junta/error.hpp"
#include "junta/fourier.hpp"
#include "junta/io.hpp"
#include "junta/learners.hpp"
#include "junta/oracle.hpp"
#include "junta/polynomial.hpp"
#include "junta/random_instances.hpp"
#include "junta/regression.hpp"
#include "junta/rng.hpp"
#include "junta/suites.hpp"
