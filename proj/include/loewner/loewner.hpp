#ifndef LOEWNER_LOEWNER_HPP
#define LOEWNER_LOEWNER_HPP

#include "loewner/analysis.hpp"
#include "loewner/builders.hpp"
#include "loewner/core_types.hpp"
#include "loewner/inertia.hpp"
#include "loewner/io.hpp"
#include "loewner/scalar.hpp"
#include "loewner/sweep.hpp"
#include "loewner/theorem_oracle.hpp"

#endif  // LOEWNER_LOEWNER_HPP
