#pragma once

#include <pathcheck/builder.hpp>
#include <pathcheck/circuit.hpp>
#include <pathcheck/contraction.hpp>
#include <pathcheck/dot.hpp>
#include <pathcheck/error.hpp>
#include <pathcheck/formula.hpp>
#include <pathcheck/parse.hpp>
#include <pathcheck/random.hpp>
#include <pathcheck/selftest.hpp>
#include <pathcheck/semantics.hpp>
#include <pathcheck/trace.hpp>
#include <pathcheck/worker_pool.hpp>
