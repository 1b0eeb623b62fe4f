#pragma once

#include "rational.hpp"
#include "graph.hpp"
#include "coxeter.hpp"
#include "roots.hpp"
#include "transfer.hpp"
#include "feasibility.hpp"
#include "rep.hpp"
#include "verify.hpp"
#include "io.hpp"

namespace starspec {

inline constexpr const char* version = "0.1.0";

} // namespace starspec
