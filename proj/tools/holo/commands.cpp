#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "holo/adiabatic.hpp"
#include "holo/connection.hpp"
#include "holo/errors.hpp"
#include "holo/formulas.hpp"
#include "holo/holonomy.hpp"
#include "holo/io.hpp"
#include "holo/verify.hpp"

namespace holo::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kAutoSamples = 50;

std::vector<Subspace> parse_subspaces(const std::string& s) {
  if (s == "plus") return {Subspace::plus};
  if (s == "minus") return {Subspace::minus};
  if (s == "both") return {Subspace::plus, Subspace::minus};
  raise(ErrorKind::invalid_argument, "unknown subspace \"" + s + "\" (plus, minus or both)");
}

const char* label(Subspace s) { return s == Subspace::plus ? "plus" : "minus"; }
char sign(Subspace s) { return s == Subspace::plus ? '+' : '-'; }

CoordinateIndex coordinate(const std::string& text) {
  const auto c = parse_coordinate(text);
  if (!c) {
    raise(ErrorKind::invalid_argument,
          "unknown coordinate \"" + text + "\"; valid coordinates: " + coordinate_names());
  }
  return *c;
}

void require_method(const std::string& m, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (m == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  raise(ErrorKind::invalid_argument, "unknown method \"" + m + "\" (" + list + ")");
}

void emit(const Common& common, const std::string& body) {
  if (common.out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(common.out_path, std::ios::binary);
  if (!out) raise(ErrorKind::invalid_argument, "cannot write " + common.out_path);
  out << body;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// "auto" runs the convention search once per (seed, samples) and keeps the
// answer in convention.json beside the output.
RotationConvention resolve_convention(const Common& common, const fs::path& cache_dir) {
  if (common.convention != "auto") {
    const auto conv = parse_convention(common.convention);
    if (!conv) {
      raise(ErrorKind::invalid_argument,
            "unknown convention \"" + common.convention +
                "\" (auto, or angle_scale/offdiag_phase/phase_orientation such as "
                "full/plus_i/e_plus_iphi_upper)");
    }
    return *conv;
  }

  const fs::path cache = cache_dir / "convention.json";
  if (fs::exists(cache)) {
    try {
      const auto j = nlohmann::json::parse(read_file(cache.string()));
      if (j.at("seed").get<std::uint64_t>() == common.seed &&
          j.at("samples").get<int>() == kAutoSamples) {
        if (auto conv = parse_convention(j.at("convention").get<std::string>())) return *conv;
      }
    } catch (const nlohmann::json::exception&) {
      // stale or foreign file: search again and overwrite
    }
  }

  const auto search = convention_search(kAutoSamples, common.seed);
  ordered_json table = ordered_json::array();
  for (const auto& row : search.table) {
    table.push_back({{"convention", to_string(row.convention)}, {"total_residual", row.total_residual}});
  }
  ordered_json tied = ordered_json::array();
  for (const auto& c : search.tied) tied.push_back(to_string(c));
  const ordered_json j = {{"convention", to_string(search.best)},
                          {"seed", common.seed},
                          {"samples", kAutoSamples},
                          {"margin", search.margin},
                          {"tied", tied},
                          {"table", table}};
  fs::create_directories(cache_dir);
  std::ofstream(cache, std::ios::binary) << dump(j);
  return search.best;
}

fs::path output_dir(const Common& common) {
  if (common.out_path.empty()) return fs::current_path();
  const auto parent = fs::path(common.out_path).parent_path();
  return parent.empty() ? fs::current_path() : parent;
}

struct Row {
  std::string what;
  Subspace subspace;
  std::string method;
  CMat2 matrix;
  double antihermiticity;
};

std::string render_rows(const Common& common, const RotationConvention& conv,
                        const std::vector<Row>& rows, const std::vector<std::string>& notes,
                        const std::vector<std::pair<Subspace, double>>& residuals,
                        const std::string& prefix) {
  switch (parse_format(common.output)) {
    case Format::csv: {
      std::string out = csv_line({"coord_or_pair", "subspace", "method", "re11", "im11", "re12",
                                  "im12", "re21", "im21", "re22", "im22"});
      for (const auto& r : rows) {
        std::vector<std::string> cells = {r.what, label(r.subspace), r.method};
        for (auto& c : matrix_csv(r.matrix)) cells.push_back(c);
        out += csv_line(cells);
      }
      return out;
    }
    case Format::json: {
      ordered_json blocks = ordered_json::array();
      for (const auto& r : rows) {
        blocks.push_back({{"coord_or_pair", r.what},
                          {"subspace", label(r.subspace)},
                          {"method", r.method},
                          {"matrix", matrix_json(r.matrix)},
                          {"antihermiticity_residual", r.antihermiticity}});
      }
      ordered_json diffs = ordered_json::array();
      for (const auto& [s, d] : residuals) {
        diffs.push_back({{"subspace", label(s)}, {"max_abs_difference", d}});
      }
      ordered_json j = {{"convention", to_string(conv)}, {"blocks", blocks}};
      if (!residuals.empty()) j["numeric_vs_analytic"] = diffs;
      if (!notes.empty()) j["notes"] = notes;
      return dump(j);
    }
    case Format::text: {
      std::string out = "convention " + to_string(conv) + "\n";
      for (const auto& r : rows) {
        out += prefix + sign(r.subspace) + "_" + r.what + " (" + r.method + ")\n";
        out += matrix_text(r.matrix);
        out += "  anti-hermiticity residual " + num(r.antihermiticity) + "\n";
      }
      for (const auto& [s, d] : residuals) {
        out += std::string("max |numeric - analytic| on ") + label(s) + ": " + num(d) + "\n";
      }
      for (const auto& n : notes) out += n + "\n";
      return out;
    }
  }
  return {};
}

}  // namespace

int run_connection(const Common& common, const ConnectionArgs& args) {
  require_method(args.method, {"numeric", "analytic", "both"});
  const auto c = coordinate(args.coord);
  const auto subspaces = parse_subspaces(args.subspace);
  parse_format(common.output);
  const auto p = parse_point(read_file(args.point));
  const auto conv = resolve_convention(common, output_dir(common));

  std::vector<Row> rows;
  std::vector<std::pair<Subspace, double>> residuals;
  for (Subspace s : subspaces) {
    std::optional<CMat2> numeric, analytic;
    if (args.method != "analytic") {
      const auto b = connection_numeric(p, c, s, conv, args.h);
      numeric = b.matrix;
      rows.push_back({name(c), s, "numeric", b.matrix, antihermiticity_residual<2>(b.matrix)});
    }
    if (args.method != "numeric") {
      const auto b = connection_analytic(p, c, s);
      analytic = b.matrix;
      rows.push_back({name(c), s, "analytic", b.matrix, antihermiticity_residual<2>(b.matrix)});
    }
    if (numeric && analytic) residuals.emplace_back(s, max_abs_difference<2>(*numeric, *analytic));
  }
  emit(common, render_rows(common, conv, rows, {}, residuals, "A"));
  return 0;
}

int run_field(const Common& common, const FieldArgs& args) {
  require_method(args.method, {"numeric", "analytic", "both"});
  const auto mu = coordinate(args.mu);
  const auto nu = coordinate(args.nu);
  if (mu == nu) raise(ErrorKind::invalid_argument, "--mu and --nu must differ");
  const auto subspaces = parse_subspaces(args.subspace);
  parse_format(common.output);
  const auto p = parse_point(read_file(args.point));
  const auto conv = resolve_convention(common, output_dir(common));
  const std::string what = name(mu) + ":" + name(nu);

  std::vector<Row> rows;
  std::vector<std::string> notes;
  std::vector<std::pair<Subspace, double>> residuals;
  for (Subspace s : subspaces) {
    std::optional<CMat2> numeric, analytic;
    if (args.method != "analytic") {
      numeric = field_strength(p, mu, nu, s, conv, Method::numeric, args.h).matrix;
      rows.push_back({what, s, "numeric", *numeric, antihermiticity_residual<2>(*numeric)});
    }
    if (args.method != "numeric") {
      if (args.method == "both" && !formulas::find_field(mu, nu, s)) {
        notes.push_back(std::string("F") + sign(s) + "_" + name(mu) + "_" + name(nu) +
                        " has no printed closed form; numeric only");
      } else {
        analytic = field_strength(p, mu, nu, s, conv, Method::analytic).matrix;
        rows.push_back({what, s, "analytic", *analytic, antihermiticity_residual<2>(*analytic)});
      }
    }
    if (numeric && analytic) residuals.emplace_back(s, max_abs_difference<2>(*numeric, *analytic));
  }
  emit(common, render_rows(common, conv, rows, notes, residuals, "F"));
  return 0;
}

int run_holonomy(const Common& common, const HolonomyArgs& args) {
  require_method(args.method, {"ordered", "stokes", "both"});
  if (args.source != "numeric" && args.source != "analytic") {
    raise(ErrorKind::invalid_argument, "unknown source \"" + args.source + "\" (numeric or analytic)");
  }
  const auto subspaces = parse_subspaces(args.subspace);
  const auto format = parse_format(common.output);
  Loop loop = parse_loop(read_file(args.loop));
  if (args.steps > 0) loop.steps_per_segment = args.steps;
  loop.validate();
  const auto conv = resolve_convention(common, output_dir(common));

  std::optional<HolonomyPair> ordered;
  if (args.method != "stokes") {
    OrderedOptions opts;
    opts.source = args.source == "numeric" ? ConnectionSource::numeric : ConnectionSource::analytic;
    ordered = holonomy_ordered(loop, conv, opts);
  }

  std::optional<HolonomyPair> stokes;
  if (args.method != "ordered") {
    const auto region = region_from_loop(loop);
    if (!region) {
      raise(ErrorKind::invalid_argument,
            "the stokes method needs a four-sided loop along two coordinate axes");
    }
    StokesOptions opts;
    opts.quad_tol = args.quad_tol;
    opts.check = args.strict_stokes ? CommutationCheck::along_plane : CommutationCheck::pointwise;
    stokes.emplace();
    for (Subspace s : subspaces) {
      const CMat2 g = holonomy_stokes(region->first, s, conv, opts);
      (*stokes)[s] = region->second ? CMat2(g.adjoint()) : g;
    }
  }

  struct Result {
    const char* method;
    const HolonomyPair* pair;
  };
  std::vector<Result> results;
  if (ordered) results.push_back({"ordered", &*ordered});
  if (stokes) results.push_back({"stokes", &*stokes});

  std::string body;
  if (format == Format::json) {
    ordered_json j = {{"convention", to_string(conv)}, {"steps_per_segment", loop.steps_per_segment}};
    for (const auto& r : results) {
      ordered_json block;
      for (Subspace s : subspaces) {
        block[std::string("gamma_") + label(s)] = matrix_json((*r.pair)[s]);
        block[std::string("unitarity_residual_") + label(s)] = unitarity_residual<2>((*r.pair)[s]);
      }
      j[r.method] = block;
    }
    if (ordered && stokes) {
      ordered_json d;
      for (Subspace s : subspaces) d[label(s)] = unitary_distance<2>((*ordered)[s], (*stokes)[s]);
      j["ordered_vs_stokes"] = d;
    }
    body = dump(j);
  } else if (format == Format::csv) {
    body = csv_line({"method", "subspace", "re11", "im11", "re12", "im12", "re21", "im21", "re22",
                     "im22", "unitarity_residual"});
    for (const auto& r : results) {
      for (Subspace s : subspaces) {
        std::vector<std::string> cells = {r.method, label(s)};
        for (auto& c : matrix_csv((*r.pair)[s])) cells.push_back(c);
        cells.push_back(num(unitarity_residual<2>((*r.pair)[s])));
        body += csv_line(cells);
      }
    }
  } else {
    body = "convention " + to_string(conv) + "\n";
    for (const auto& r : results) {
      for (Subspace s : subspaces) {
        body += std::string("Gamma") + sign(s) + " (" + r.method + ")\n" + matrix_text((*r.pair)[s]);
        body += "  unitarity residual " + num(unitarity_residual<2>((*r.pair)[s])) + "\n";
      }
    }
    if (ordered && stokes) {
      for (Subspace s : subspaces) {
        body += std::string("ordered vs stokes (") + label(s) +
                "): " + num(unitary_distance<2>((*ordered)[s], (*stokes)[s])) + "\n";
      }
    }
  }
  emit(common, body);
  return 0;
}

int run_verify(const Common& common, const VerifyArgs& args) {
  if (args.samples < kMinSamples) {
    raise(ErrorKind::invalid_argument, "samples must be >= " + std::to_string(kMinSamples));
  }
  const auto format = parse_format(common.output);
  const fs::path dir = args.out_dir;
  fs::create_directories(dir);
  const auto conv = resolve_convention(common, dir);
  const auto report = run_conformance(conv, args.samples, common.seed, args.tol_connection,
                                      args.tol_field);

  const std::string json = to_json(report);
  const std::string text = to_text(report);
  std::ofstream(dir / "report.json", std::ios::binary) << json;
  std::ofstream(dir / "report.txt", std::ios::binary) << text;

  if (format == Format::json) {
    emit(common, json);
  } else if (format == Format::csv) {
    std::string body = csv_line({"id", "max_residual", "tol", "pass", "repair"});
    for (const auto& f : report.formulas) {
      body += csv_line({f.id, num(f.max_residual), num(f.tol), f.pass ? "true" : "false",
                        f.repair.value_or("")});
    }
    emit(common, body);
  } else {
    emit(common, text);
  }
  return report.all_pass() ? 0 : 1;
}

int run_adiabatic(const Common& common, const AdiabaticArgs& args) {
  SpeedProfile profile;
  if (args.profile == "smoothstep") {
    profile = SpeedProfile::smoothstep;
  } else if (args.profile == "uniform") {
    profile = SpeedProfile::uniform;
  } else {
    raise(ErrorKind::invalid_argument, "unknown profile \"" + args.profile + "\" (smoothstep or uniform)");
  }
  const auto format = parse_format(common.output);
  const auto conv = resolve_convention(common, output_dir(common));

  if (args.two_level) {
    RotationConvention kernel = conv;
    if (args.kernel != "selected") {
      const auto k = parse_convention(args.kernel);
      if (!k) raise(ErrorKind::invalid_argument, "unknown kernel convention \"" + args.kernel + "\"");
      kernel = *k;
    }
    const auto loop = parse_two_level_loop(read_file(args.loop));
    const int steps = args.steps > 0 ? args.steps
                                     : std::max(Schedule::kMinSteps,
                                                static_cast<int>(args.steps_per_time * args.omega *
                                                                 args.total_time));
    const auto res = evolve_two_level(loop, args.omega, args.total_time, steps, kernel, profile);

    std::string body;
    if (format == Format::json) {
      body = dump({{"kernel", to_string(kernel)},
                   {"total_time", args.total_time},
                   {"steps", steps},
                   {"phi_plus", res.phi_plus},
                   {"phi_minus", res.phi_minus}});
    } else if (format == Format::csv) {
      body = csv_line({"T", "steps", "phi_plus", "phi_minus"}) +
             csv_line({num(args.total_time), std::to_string(steps), num(res.phi_plus),
                       num(res.phi_minus)});
    } else {
      body = "kernel " + to_string(kernel) + "\nphi+ " + num(res.phi_plus) + "\nphi- " +
             num(res.phi_minus) + "\n";
    }
    emit(common, body);
    return 0;
  }

  Loop loop = parse_loop(read_file(args.loop));
  loop.validate();
  if (args.times.empty()) raise(ErrorKind::invalid_argument, "--times needs at least one value");
  ConvergenceOptions opts;
  opts.steps_per_unit_time = args.steps_per_time;
  opts.profile = profile;
  opts.fixed_steps = args.steps;

  std::vector<ConvergenceRow> rows;
  if (args.times.size() >= 3) {
    rows = convergence_study(loop, args.omega, args.times, conv, opts);
  } else {
    const auto prediction = adiabatic_prediction(loop, conv);
    for (double t : args.times) {
      if (!(t > 0.0)) raise(ErrorKind::invalid_argument, "times must be positive");
      rows.push_back(adiabatic_run(loop, args.omega, t, prediction, conv, opts));
    }
  }

  std::string body;
  if (format == Format::json) {
    ordered_json list = ordered_json::array();
    for (const auto& r : rows) {
      list.push_back({{"T", r.total_time},
                      {"steps", r.steps},
                      {"leakage", r.leakage},
                      {"err_plus", r.err_plus},
                      {"err_minus", r.err_minus},
                      {"gamma_plus", matrix_json(r.geometric.gamma_plus)},
                      {"gamma_minus", matrix_json(r.geometric.gamma_minus)}});
    }
    body = dump({{"convention", to_string(conv)}, {"omega", args.omega}, {"rows", list}});
  } else {
    // text and csv share the plot-ready table
    body = csv_line({"T", "steps", "leakage", "err_plus", "err_minus"});
    for (const auto& r : rows) {
      body += csv_line({num(r.total_time), std::to_string(r.steps), num(r.leakage), num(r.err_plus),
                        num(r.err_minus)});
    }
  }
  emit(common, body);
  return 0;
}

}  // namespace holo::cli
