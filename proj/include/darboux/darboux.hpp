#pragma once

// Umbrella header: the whole library in one include.

#include "calculus.hpp"
#include "chart.hpp"
#include "cli.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "io.hpp"
#include "multisymplectic.hpp"
#include "polynomial.hpp"
#include "polysymplectic.hpp"
#include "random_gen.hpp"
#include "rational.hpp"
#include "verify.hpp"
