#pragma once

#include "gca/core/address.hpp"
#include "gca/core/state.hpp"
#include "gca/core/rules.hpp"
#include "gca/core/engine.hpp"
#include "gca/core/trace_io.hpp"
#include "gca/algorithms/spec.hpp"
#include "gca/algorithms/reduction.hpp"
#include "gca/algorithms/bitonic.hpp"
#include "gca/algorithms/xor.hpp"
#include "gca/algorithms/fft.hpp"
#include "gca/firing/firing.hpp"
#include "gca/archsim/archsim.hpp"
#include "gca/oracles/oracles.hpp"
#include "gca/io/render.hpp"
#include "gca/catalog.hpp"
