#pragma once

#include <iosfwd>
#include <string>

#include "pgex/problems.hpp"

namespace pgex {

/// Plain-text instance format:
///
///   pgex-instance 1
///   family=lasso|logistic|qp
///   generator_version=<int>
///   seed=<uint64>
///   <family-specific scalars: m=, n=, lambda=, shift=, s=>
///   A <rows> <cols>
///   <one line per row>
///   b <len>
///   <one line>
///   [planted <len>
///   <one line>]
///   end
///
/// Reals use 17 significant digits so that read_instance(write_instance(x))
/// reproduces every entry bit-for-bit.
void write_instance(std::ostream& out, const ProblemInstance& inst);
ProblemInstance read_instance(std::istream& in);

void save_instance(const std::string& path, const ProblemInstance& inst);
ProblemInstance load_instance(const std::string& path);

/// "%.17g" formatting shared by every text output of the library.
std::string format_real(double v);

}  // namespace pgex
