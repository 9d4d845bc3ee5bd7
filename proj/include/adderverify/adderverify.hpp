/// \file adderverify.hpp
/// \brief Umbrella header.

#pragma once

#include "adder_spec.hpp"
#include "bdd.hpp"
#include "bdd_dot.hpp"
#include "circuit.hpp"
#include "generators.hpp"
#include "netlist.hpp"
#include "symsim.hpp"
#include "verify.hpp"
