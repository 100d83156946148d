#include "holo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <json.hpp>

#include "holo/connection.hpp"
#include "holo/errors.hpp"
#include "holo/formulas.hpp"

namespace holo {
namespace {

using formulas::Formula;

void require_samples(int samples) {
  if (samples < kMinSamples) {
    raise(ErrorKind::invalid_argument, "samples must be >= " + std::to_string(kMinSamples));
  }
}

// Runs fn(i) for i in [0, n) on a few threads. Each index writes only its own
// slot, so callers aggregate afterwards in index order.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

Subspace other(Subspace s) { return s == Subspace::plus ? Subspace::minus : Subspace::plus; }

// Numeric oracle for a formula on a chosen subspace.
CMat2 oracle(const Formula& f, const GrassmannianPoint& p, Subspace s,
             const RotationConvention& conv) {
  if (f.kind == formulas::Kind::connection) return connection_numeric(p, f.mu, s, conv).matrix;
  return field_strength(p, f.mu, *f.nu, s, conv, Method::numeric).matrix;
}

const std::vector<const Formula*>& connection_formulas() {
  static const auto list = [] {
    std::vector<const Formula*> out;
    for (const auto& f : formulas::table()) {
      if (f.kind == formulas::Kind::connection) out.push_back(&f);
    }
    return out;
  }();
  return list;
}

struct Candidate {
  const char* name;
  // Transforms the printed value before comparison; `swap` compares against
  // the other subspace's oracle.
  bool negate;
  bool conjugate;
  bool swap;
};

constexpr std::array<Candidate, 4> kCandidates = {{
    {nullptr, false, false, false},
    {"global_minus", true, false, false},
    {"conjugate", false, true, false},
    {"subspace_swap", false, false, true},
}};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

std::vector<GrassmannianPoint> sample_points(int samples, std::uint64_t seed) {
  require_samples(samples);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  constexpr double quarter = 0.5 * std::numbers::pi;

  auto near_pole = [](double theta) {
    const double r = std::remainder(theta, quarter);
    return std::abs(r) < kPoleMargin;
  };

  std::vector<GrassmannianPoint> out;
  out.reserve(samples);
  while (static_cast<int>(out.size()) < samples) {
    GrassmannianPoint p;
    for (auto& x : p.coords) x = angle(rng);
    bool ok = true;
    for (auto pr : kAllPairs) ok = ok && !near_pole(p.theta(pr));
    if (ok) out.push_back(p);
  }
  return out;
}

ConventionSearch convention_search(int samples, std::uint64_t seed) {
  const auto points = sample_points(samples, seed);
  const auto& blocks = connection_formulas();
  const auto candidates = all_conventions();

  ConventionSearch out;
  for (const auto& conv : candidates) {
    // residual[i][b]: sample i, block b
    std::vector<std::vector<double>> residual(points.size(), std::vector<double>(blocks.size()));
    parallel_for(points.size(), [&](std::size_t i) {
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& f = *blocks[b];
        residual[i][b] = max_abs_difference<2>(oracle(f, points[i], f.subspace, conv),
                                               formulas::evaluate(f, points[i]));
      }
    });
    double total = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      double worst = 0.0;
      for (const auto& row : residual) worst = std::max(worst, row[b]);
      total += worst;
    }
    out.table.push_back({conv, total});
  }

  // Candidates are already in lexicographic order, so the first minimum wins ties.
  const auto best = std::min_element(out.table.begin(), out.table.end(),
                                     [](const auto& a, const auto& b) {
                                       return a.total_residual < b.total_residual - kTieTol;
                                     });
  out.best = best->convention;
  double runner_up = std::numeric_limits<double>::infinity();
  for (const auto& row : out.table) {
    if (std::abs(row.total_residual - best->total_residual) <= kTieTol) {
      out.tied.push_back(row.convention);
    } else {
      runner_up = std::min(runner_up, row.total_residual);
    }
  }
  out.margin = best->total_residual > 0.0 ? runner_up / best->total_residual
                                          : std::numeric_limits<double>::infinity();
  return out;
}

bool ConformanceReport::structural_pass() const {
  return std::all_of(structural.begin(), structural.end(), [](const auto& c) { return c.pass; });
}

bool ConformanceReport::formulas_pass() const {
  return std::all_of(formulas.begin(), formulas.end(), [](const auto& f) { return f.pass; });
}

const FormulaResult* ConformanceReport::find(const std::string& id) const {
  for (const auto& f : formulas) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

ConformanceReport run_conformance(const RotationConvention& conv, int samples, std::uint64_t seed,
                                  double tol_connection, double tol_field) {
  if (!(tol_connection > 0.0) || !(tol_field > 0.0)) {
    raise(ErrorKind::invalid_argument, "tolerances must be > 0");
  }
  const auto points = sample_points(samples, seed);
  const auto& table = formulas::table();

  ConformanceReport report;
  report.convention = conv;
  report.seed = seed;
  report.samples = samples;
  report.tol_connection = tol_connection;
  report.tol_field = tol_field;

  // Per sample: residual of every formula under every repair candidate.
  using Row = std::vector<std::array<double, kCandidates.size()>>;
  std::vector<Row> residual(points.size(), Row(table.size()));

  // Structural quantities per sample, reduced with max afterwards.
  enum Check { unitarity, raw_antihermiticity, zero_blocks, antisymmetry, field_antihermiticity,
               commuting_pairs, kChecks };
  std::vector<std::array<double, kChecks>> structural(points.size());

  parallel_for(points.size(), [&](std::size_t i) {
    const auto& p = points[i];
    auto& st = structural[i];
    st.fill(0.0);
    st[unitarity] = unitarity_residual<4>(build_unitary(p, conv));

    for (auto c : kAllCoordinates) {
      for (Subspace s : {Subspace::plus, Subspace::minus}) {
        const auto a = connection_numeric(p, c, s, conv);
        st[raw_antihermiticity] = std::max(st[raw_antihermiticity], a.raw_antihermiticity);
      }
    }

    for (std::size_t k = 0; k < table.size(); ++k) {
      const auto& f = table[k];
      const CMat2 printed = formulas::evaluate(f, p);
      const CMat2 own = oracle(f, p, f.subspace, conv);
      const CMat2 swapped = oracle(f, p, other(f.subspace), conv);
      for (std::size_t r = 0; r < kCandidates.size(); ++r) {
        const auto& cand = kCandidates[r];
        CMat2 value = cand.negate ? CMat2(-printed) : printed;
        if (cand.conjugate) value = value.conjugate();
        residual[i][k][r] = max_abs_difference<2>(cand.swap ? swapped : own, value);
      }

      if (f.kind == formulas::Kind::connection) {
        if (f.identically_zero()) st[zero_blocks] = std::max(st[zero_blocks], own.norm());
        continue;
      }
      const CMat2 back = field_strength(p, *f.nu, f.mu, f.subspace, conv).matrix;
      st[antisymmetry] = std::max(st[antisymmetry], (own + back).norm());
      st[field_antihermiticity] =
          std::max(st[field_antihermiticity], antihermiticity_residual<2>(own));
      st[commuting_pairs] =
          std::max(st[commuting_pairs], commutator_norm(p, f.mu, *f.nu, f.subspace, conv));
    }
  });

  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& f = table[k];
    std::array<double, kCandidates.size()> worst{};
    for (const auto& row : residual) {
      for (std::size_t r = 0; r < worst.size(); ++r) worst[r] = std::max(worst[r], row[k][r]);
    }
    FormulaResult res;
    res.id = f.id;
    res.tol = f.kind == formulas::Kind::connection ? tol_connection : tol_field;
    res.max_residual = worst[0];
    res.pass = worst[0] <= res.tol;
    if (!res.pass) {
      for (std::size_t r = 1; r < worst.size(); ++r) {
        if (worst[r] <= res.tol) {
          res.repair = kCandidates[r].name;
          break;
        }
      }
    }
    report.formulas.push_back(std::move(res));
  }

  static constexpr std::array<const char*, kChecks> kNames = {
      "unitarity", "connection_antihermiticity", "zero_connection_blocks",
      "field_antisymmetry", "field_antihermiticity", "commuting_pairs"};
  static constexpr std::array<double, kChecks> kTols = {1e-12, 1e-8, 1e-7, 0.0, 1e-8, 1e-7};
  for (int c = 0; c < kChecks; ++c) {
    double worst = 0.0;
    for (const auto& st : structural) worst = std::max(worst, st[c]);
    report.structural.push_back({kNames[c], worst, kTols[c], worst <= kTols[c]});
  }
  return report;
}

std::string to_json(const ConformanceReport& report) {
  using nlohmann::ordered_json;
  ordered_json conv = {
      {"name", to_string(report.convention)},
      {"angle_scale", report.convention.angle_scale == AngleScale::full ? "full" : "half"},
      {"offdiag_phase", report.convention.offdiag_phase == OffdiagPhase::plus_i ? "plus_i" : "minus_i"},
      {"phase_orientation", report.convention.phase_orientation == PhaseOrientation::e_plus_iphi_upper
                                ? "e_plus_iphi_upper"
                                : "e_minus_iphi_upper"}};

  ordered_json formulas_json = ordered_json::array();
  for (const auto& f : report.formulas) {
    formulas_json.push_back({{"id", f.id},
                             {"max_residual", f.max_residual},
                             {"tol", f.tol},
                             {"pass", f.pass},
                             {"repair", f.repair ? ordered_json(*f.repair) : ordered_json(nullptr)}});
  }
  ordered_json structural = ordered_json::object();
  for (const auto& c : report.structural) {
    structural[c.name] = {{"max", c.worst}, {"tol", c.tol}, {"pass", c.pass}};
  }

  ordered_json out = {{"convention", conv},
                      {"seed", report.seed},
                      {"samples", report.samples},
                      {"tol", {{"connection", report.tol_connection}, {"field", report.tol_field}}},
                      {"formulas", formulas_json},
                      {"structural", structural},
                      {"pass", report.all_pass()}};
  return out.dump(2) + "\n";
}

std::string to_text(const ConformanceReport& report) {
  std::string out;
  out += "convention  " + to_string(report.convention) + "\n";
  out += "seed        " + std::to_string(report.seed) + "\n";
  out += "samples     " + std::to_string(report.samples) + "\n\n";

  char line[160];
  std::snprintf(line, sizeof line, "%-24s %12s %10s  %-6s %s\n", "formula", "max_residual", "tol",
                "status", "repair");
  out += line;
  int failed = 0;
  for (const auto& f : report.formulas) {
    const char* status = f.pass ? "ok" : "FAIL";
    failed += f.pass ? 0 : 1;
    std::snprintf(line, sizeof line, "%-24s %12s %10s  %-6s %s\n", f.id.c_str(),
                  fmt(f.max_residual).c_str(), fmt(f.tol).c_str(), status,
                  f.repair ? f.repair->c_str() : (f.pass ? "" : "open"));
    out += line;
  }
  out += "\nstructural\n";
  for (const auto& c : report.structural) {
    std::snprintf(line, sizeof line, "  %-28s %12s <= %-10s %s\n", c.name.c_str(),
                  fmt(c.worst).c_str(), fmt(c.tol).c_str(), c.pass ? "ok" : "FAIL");
    out += line;
  }
  out += "\n" + std::to_string(report.formulas.size() - failed) + "/" +
         std::to_string(report.formulas.size()) + " formulas pass; structural " +
         (report.structural_pass() ? "ok" : "FAILED") + "\n";
  return out;
}

TriangleResult stokes_triangle(const PlanarRegion& region, const RotationConvention& conv,
                               int steps, const StokesOptions& options) {
  region.validate();
  TriangleResult out;
  if (region.area() == 0.0) {
    out.plus = 0.0;
    out.minus = 0.0;
    return out;
  }

  const auto loop = loop_boundary(region, steps);
  std::optional<HolonomyPair> ordered;
  for (Subspace s : {Subspace::plus, Subspace::minus}) {
    CMat2 stokes;
    try {
      stokes = holonomy_stokes(region, s, conv, options);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::non_commuting_plane) throw;
      continue;
    }
    if (!ordered) ordered = holonomy_ordered(loop, conv);
    (s == Subspace::plus ? out.plus : out.minus) = unitary_distance<2>((*ordered)[s], stokes);
  }
  if (!out.plus && !out.minus) {
    raise(ErrorKind::non_commuting_plane, "(" + name(region.sigma) + ", " +
                                              name(region.sigma_prime) +
                                              ") does not commute on either subspace");
  }
  return out;
}

}  // namespace holo
