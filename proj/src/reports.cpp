#include "fraclap/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fraclap {

namespace {

constexpr int kReportDigits = 12;
constexpr int kDumpDigits = 17;

// Value as it appears after rounding to the report precision.
nlohmann::json rounded(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_sig(v, kReportDigits));
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string format_sig(double v, int digits) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string spectrum_csv(const SpectrumResult& spec) {
  std::ostringstream os;
  os << "k,lambda_k\n";
  for (Eigen::Index j = 0; j < spec.size(); ++j) {
    os << j + 1 << ',' << format_sig(spec.eigenvalues[j], kDumpDigits) << '\n';
  }
  return os.str();
}

std::string eigenvectors_csv(const Domain& domain, const SpectrumResult& spec) {
  std::ostringstream os;
  for (int i = 0; i < domain.dim(); ++i) os << (i ? "," : "") << 'x' << i;
  for (Eigen::Index j = 0; j < spec.size(); ++j) os << ",phi_" << j + 1;
  os << '\n';
  for (std::size_t r = 0; r < domain.size(); ++r) {
    const auto& x = domain[r];
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    for (Eigen::Index j = 0; j < spec.size(); ++j) {
      os << ',' << format_sig(spec.eigenvectors(static_cast<Eigen::Index>(r), j), kDumpDigits);
    }
    os << '\n';
  }
  return os.str();
}

std::string matrix_csv(const OperatorMatrix& op) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < op.size(); ++i) {
    for (Eigen::Index j = 0; j < op.size(); ++j) {
      os << (j ? "," : "") << format_sig(op.entries(i, j), kDumpDigits);
    }
    os << '\n';
  }
  return os.str();
}

std::string bound_report_csv(const BoundReport& report) {
  std::ostringstream os;
  os << "k,avg_k,upper_avg,lower_avg,lambda_next,upper_next,eligible_upper_avg,eligible_upper_next,"
        "eligible_lower,margin_upper_avg,margin_upper_next,margin_lower,margin_chain\n";
  auto f = [](double v) { return format_sig(v, kReportDigits); };
  for (const auto& r : report.rows) {
    os << r.k << ',' << f(r.avg) << ',' << f(r.upper_avg) << ',' << f(r.lower_avg) << ','
       << f(r.lambda_next) << ',' << f(r.upper_next) << ',' << int(r.eligible_upper_avg) << ','
       << int(r.eligible_upper_next) << ',' << int(r.eligible_lower) << ',' << f(r.margin_upper_avg)
       << ',' << f(r.margin_upper_next) << ',' << f(r.margin_lower) << ',' << f(r.margin_chain) << '\n';
  }
  return os.str();
}

std::string bound_report_json(const BoundReport& report) {
  nlohmann::json doc;
  doc["dim"] = report.dim;
  doc["alpha"] = report.alpha;
  doc["omega_size"] = report.omega_size;
  doc["boundary"] = rounded(report.boundary);
  doc["k_max"] = {{"upper_avg", report.limits.upper_avg},
                  {"upper_next", report.limits.upper_next},
                  {"lower", report.limits.lower}};
  doc["lower_no_eligible_k"] = report.lower_vacuous;
  doc["passed"] = report.passed;
  doc["violations"] = report.violations;
  doc["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) {
    doc["rows"].push_back({{"k", r.k},
                           {"avg_k", rounded(r.avg)},
                           {"upper_avg", rounded(r.upper_avg)},
                           {"lower_avg", rounded(r.lower_avg)},
                           {"lambda_next", rounded(r.lambda_next)},
                           {"upper_next", rounded(r.upper_next)},
                           {"eligible_upper_avg", r.eligible_upper_avg},
                           {"eligible_upper_next", r.eligible_upper_next},
                           {"eligible_lower", r.eligible_lower},
                           {"margin_upper_avg", rounded(r.margin_upper_avg)},
                           {"margin_upper_next", rounded(r.margin_upper_next)},
                           {"margin_lower", rounded(r.margin_lower)},
                           {"margin_chain", rounded(r.margin_chain)}});
  }
  return doc.dump(2) + "\n";
}

std::string bounds_svg(const BoundReport& report, const std::string& title) {
  const double W = 760, H = 480, left = 70, right = 190, top = 40, bottom = 50;
  const double pw = W - left - right, ph = H - top - bottom;
  const int n = std::max(1, report.omega_size);

  double ymax = 0.0;
  for (const auto& r : report.rows) {
    for (double v : {r.avg, r.upper_avg, r.lower_avg, r.lambda_next, r.upper_next}) {
      if (std::isfinite(v)) ymax = std::max(ymax, v);
    }
  }
  if (ymax <= 0.0) ymax = 1.0;
  ymax *= 1.05;
  double ymin = 0.0;
  for (const auto& r : report.rows) {
    if (std::isfinite(r.lower_avg)) ymin = std::min(ymin, r.lower_avg);
  }

  auto X = [&](double k) { return left + (k - 0.5) / n * pw; };
  auto Y = [&](double v) { return top + (ymax - v) / (ymax - ymin) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << left << "\" y=\"24\" font-size=\"15\">" << xml_escape(title) << "</text>\n";

  auto shade = [&](int limit, const char* color) {
    if (limit < 1) return;
    s << "<rect x=\"" << fixed(X(0.5)) << "\" y=\"" << top << "\" width=\"" << fixed(X(limit + 0.5) - X(0.5))
      << "\" height=\"" << ph << "\" fill=\"" << color << "\" fill-opacity=\"0.35\"/>\n";
  };
  shade(report.limits.upper_avg, "#9ecae1");
  shade(report.limits.lower, "#a1d99b");

  // Axes and ticks.
  s << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
    << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double v = ymin + (ymax - ymin) * t / 5.0;
    s << "<line x1=\"" << left - 4 << "\" y1=\"" << fixed(Y(v)) << "\" x2=\"" << left << "\" y2=\""
      << fixed(Y(v)) << "\" stroke=\"black\"/>";
    s << "<text x=\"" << left - 8 << "\" y=\"" << fixed(Y(v) + 4) << "\" text-anchor=\"end\">"
      << format_sig(v, 3) << "</text>\n";
  }
  const int step = std::max(1, n / 10);
  for (int k = 1; k <= n; k += step) {
    s << "<line x1=\"" << fixed(X(k)) << "\" y1=\"" << top + ph << "\" x2=\"" << fixed(X(k)) << "\" y2=\""
      << top + ph + 4 << "\" stroke=\"black\"/>";
    s << "<text x=\"" << fixed(X(k)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << k
      << "</text>\n";
  }
  s << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">k</text>\n";

  // Staircase of the averages.
  s << "<path fill=\"none\" stroke=\"#222222\" stroke-width=\"1.6\" d=\"";
  for (const auto& r : report.rows) {
    s << (r.k == 1 ? "M" : "L") << fixed(X(r.k - 0.5)) << ',' << fixed(Y(r.avg)) << " H" << fixed(X(r.k + 0.5))
      << ' ';
  }
  s << "\"/>\n";

  auto curve = [&](auto get, const char* color, const char* dash) {
    bool open = false;
    std::ostringstream d;
    for (const auto& r : report.rows) {
      const double v = get(r);
      if (!std::isfinite(v)) continue;
      d << (open ? "L" : "M") << fixed(X(r.k)) << ',' << fixed(Y(v)) << ' ';
      open = true;
    }
    if (!open) return;
    s << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\"" << dash << " d=\"" << d.str()
      << "\"/>\n";
  };
  curve([](const BoundRow& r) { return r.upper_avg; }, "#d62728", "");
  curve([](const BoundRow& r) { return r.lower_avg; }, "#2ca02c", "");
  curve([](const BoundRow& r) { return r.upper_next; }, "#9467bd", " stroke-dasharray=\"5,3\"");
  for (const auto& r : report.rows) {
    if (!r.eligible_upper_next) continue;
    s << "<circle cx=\"" << fixed(X(r.k)) << "\" cy=\"" << fixed(Y(r.lambda_next)) << "\" r=\"2.2\" fill=\"#9467bd\"/>";
  }
  s << '\n';

  // Legend.
  const double lx = left + pw + 16;
  struct Item {
    const char* label;
    const char* color;
    const char* dash;
  };
  const Item items[] = {{"average of first k", "#222222", ""},
                        {"upper bound (average)", "#d62728", ""},
                        {"lower bound (average)", "#2ca02c", ""},
                        {"upper bound (next)", "#9467bd", " stroke-dasharray=\"5,3\""}};
  double ly = top + 10;
  for (const auto& it : items) {
    s << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly << "\" stroke=\""
      << it.color << "\" stroke-width=\"1.6\"" << it.dash << "/>";
    s << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">" << it.label << "</text>\n";
    ly += 20;
  }
  s << "<circle cx=\"" << lx + 12 << "\" cy=\"" << ly << "\" r=\"2.2\" fill=\"#9467bd\"/>";
  s << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">lambda_(k+1)</text>\n";
  ly += 20;
  s << "<rect x=\"" << lx << "\" y=\"" << ly - 6 << "\" width=\"24\" height=\"12\" fill=\"#9ecae1\" fill-opacity=\"0.35\"/>";
  s << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">upper eligible</text>\n";
  ly += 20;
  s << "<rect x=\"" << lx << "\" y=\"" << ly - 6 << "\" width=\"24\" height=\"12\" fill=\"#a1d99b\" fill-opacity=\"0.35\"/>";
  s << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">lower eligible</text>\n";
  s << "</svg>\n";
  return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace fraclap
