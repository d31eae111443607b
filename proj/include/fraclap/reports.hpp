#pragma once

#include <filesystem>
#include <string>

#include "fraclap/bounds.hpp"
#include "fraclap/dirichlet_operator.hpp"
#include "fraclap/spectrum.hpp"

namespace fraclap {

/// Decimal with `digits` significant digits (printf %.{digits}g); NaN becomes
/// an empty string.
std::string format_sig(double v, int digits);

/// Columns k, lambda_k at 17 significant digits.
std::string spectrum_csv(const SpectrumResult& spec);

/// One row per vertex: its coordinates x0..x{d-1}, then phi_1..phi_n.
std::string eigenvectors_csv(const Domain& domain, const SpectrumResult& spec);

/// Row-major |Omega| x |Omega| entries at 17 significant digits, no header.
std::string matrix_csv(const OperatorMatrix& op);

/// BoundReport rows at 12 significant digits; ineligible bounds and margins
/// are left empty.
std::string bound_report_csv(const BoundReport& report);
std::string bound_report_json(const BoundReport& report);

/// Standalone SVG: eigenvalue-average staircase, upper and lower bound curves,
/// lambda_{k+1} against its bound, and shaded eligibility ranges.
std::string bounds_svg(const BoundReport& report, const std::string& title);

/// Throws std::runtime_error if the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace fraclap
