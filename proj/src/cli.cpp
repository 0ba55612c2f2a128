#include "abelframe/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "abelframe/io.hpp"
#include "abelframe/linalg.hpp"

namespace abelframe::cli {

namespace {

using io::json;

struct CommonFlags {
  std::string group;
  std::string subgroup;
  std::string filters;
  std::string out;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> parse_norms(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    return io::parse_inline_or_file(text).get<std::vector<double>>();
  }
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw InputError("cannot parse norm \"" + tok + "\"");
    }
  }
  return out;
}

void emit(const json& doc, const std::string& out_path, std::ostream& out) {
  const std::string text = io::dump(doc);
  if (out_path.empty()) {
    out << text;
  } else {
    io::write_file_atomic(out_path, text);
  }
}

/// A bank from a positional file or from --group/--subgroup/--filters.
FilterBank load_bank(const std::string& file, const CommonFlags& flags) {
  if (!file.empty()) return io::bank_from_json(io::parse_file(file));
  if (flags.group.empty() || flags.filters.empty()) {
    throw InputError("need a bank file or --group, --subgroup and --filters");
  }
  json j;
  j["group"] = io::parse_inline_or_file(flags.group);
  j["subgroup"] = flags.subgroup.empty() ? json{{"generators", json::array()}}
                                         : io::parse_inline_or_file(flags.subgroup);
  j["filters"] = io::parse_inline_or_file(flags.filters);
  return io::bank_from_json(j);
}

/// Signal file: either a bare [re, im] array or {"group": ..., "values": ...}.
std::pair<std::optional<GroupSpec>, std::vector<Complex>> load_values(const std::string& path) {
  const json j = io::parse_file(path);
  if (j.is_object()) {
    if (!j.contains("values")) throw InputError(path + ": signal object needs \"values\"");
    std::optional<GroupSpec> g;
    if (j.contains("group")) g = io::group_from_json(j.at("group"));
    return {g, io::complex_array_from_json(j.at("values"))};
  }
  return {std::nullopt, io::complex_array_from_json(j)};
}

GroupSpec resolve_group(const std::optional<GroupSpec>& from_file, const CommonFlags& flags) {
  if (!flags.group.empty()) {
    GroupSpec g = io::group_from_json(io::parse_inline_or_file(flags.group));
    if (from_file && !(*from_file == g)) throw InputError("--group disagrees with the signal file");
    return g;
  }
  if (from_file) return *from_file;
  throw InputError("--group is required");
}

Subgroup resolve_subgroup(const GroupSpec& g, const CommonFlags& flags) {
  if (flags.subgroup.empty()) throw InputError("--subgroup is required");
  return io::subgroup_from_json(g, io::parse_inline_or_file(flags.subgroup));
}

/// Reorders filters by nonincreasing norm (stable), reporting whether anything
/// moved.
FilterBank sorted_by_norm(const FilterBank& fb, bool& reordered) {
  const auto norms = fb.norms();
  std::vector<std::size_t> order(fb.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return norms[a] > norms[b]; });
  reordered = !std::is_sorted(order.begin(), order.end());
  std::vector<Signal> filters;
  for (auto k : order) filters.push_back(fb.filter(k));
  return fb.with_filters(std::move(filters));
}

int cmd_design(const std::string& problem_file, const CommonFlags& flags, const std::string& norms,
               const std::optional<std::uint64_t>& seed, const std::optional<std::size_t>& max_iters,
               const std::optional<double>& grad_tol, const std::optional<double>& tol,
               std::ostream& out) {
  json j = problem_file.empty() ? json::object() : io::parse_file(problem_file);
  if (!j.is_object()) throw InputError("design problem must be a JSON object");
  if (!flags.group.empty()) j["group"] = io::parse_inline_or_file(flags.group);
  if (!flags.subgroup.empty()) j["subgroup"] = io::parse_inline_or_file(flags.subgroup);
  if (!norms.empty()) j["norms"] = parse_norms(norms);
  if (seed) j["seed"] = *seed;
  if (max_iters) j["max_iters"] = *max_iters;
  if (grad_tol) j["grad_tol"] = *grad_tol;
  if (tol) j["tol"] = *tol;
  const DesignProblem problem = io::problem_from_json(j);

  const DesignReport report = minimize_fp(problem);
  emit(io::to_json(report), flags.out, out);
  if (!flags.out.empty()) {
    out << "regime " << to_string(report.split.regime) << ", m0 " << report.split.m0 << ", FP "
        << fmt(report.fp) << " (floor " << fmt(report.fp_floor) << "), grad " << fmt(report.grad_norm)
        << ", converged " << (report.converged ? "yes" : "no") << '\n';
  }
  return report.converged && report.verified(problem.verify_tol) ? kSuccess : kNumericalFailure;
}

int cmd_analyze(const std::string& file, const CommonFlags& flags, double eps, std::ostream& out) {
  const FilterBank fb = load_bank(file, flags);
  const auto blocks = build_modrep(fb);
  const FrameBounds block_bounds = block_frame_bounds(blocks);
  const FrameBounds dense_bounds = frame_bounds_dense(fb);
  const double fp_block = block_frame_potential(blocks);
  const double fp_dense = frame_potential(expand_system(fb));
  const bool tight = block_bounds.lower > 0.0 && block_bounds.upper <= (1.0 + eps) * block_bounds.lower;

  bool reordered = false;
  const auto norms = sorted_by_norm(fb, reordered).norms();
  const auto split = split_index(norms, fb.subgroup().index());

  out << "group order " << fb.group().order() << ", subgroup order " << fb.subgroup().order()
      << ", index " << fb.subgroup().index() << ", filters " << fb.size() << '\n'
      << "frame bounds (blocks) A=" << fmt(block_bounds.lower) << " B=" << fmt(block_bounds.upper) << '\n'
      << "frame bounds (dense)  A=" << fmt(dense_bounds.lower) << " B=" << fmt(dense_bounds.upper) << '\n'
      << "frame potential (blocks) " << fmt(fp_block) << '\n'
      << "frame potential (system) " << fmt(fp_dense) << '\n'
      << "tight " << (tight ? "true" : "false") << '\n'
      << "regime " << to_string(split.regime) << ", m0 " << split.m0 << '\n';

  json j{{"bounds_blocks", {block_bounds.lower, block_bounds.upper}},
         {"bounds_dense", {dense_bounds.lower, dense_bounds.upper}},
         {"fp_blocks", fp_block},
         {"fp_system", fp_dense},
         {"tight", tight},
         {"regime", to_string(split.regime)},
         {"m0", split.m0}};
  if (flags.out.empty()) out << '\n';
  emit(j, flags.out, out);
  return kSuccess;
}

int cmd_verify(const std::string& file, const CommonFlags& flags, std::optional<std::size_t> m0,
               double tol, std::ostream& out) {
  bool reordered = false;
  const FilterBank fb = sorted_by_norm(load_bank(file, flags), reordered);
  if (reordered) out << "note: filters reordered by nonincreasing norm\n";
  const std::size_t N = fb.subgroup().index();

  json j;
  bool ok = false;
  if (fb.size() < N && !m0) {
    out << "regime underdetermined (n=" << fb.size() << " < [G:H]=" << N << ")\n";
    const auto rep = verify_underdetermined(fb, tol);
    out << "orthogonality_defect " << fmt(rep.orthogonality_defect) << '\n'
        << "eigenvector_defect " << fmt(rep.eigenvector_defect) << '\n';
    ok = rep.passed(tol);
    j = io::to_json(rep);
    j["regime"] = "underdetermined";
  } else {
    const std::size_t split = m0 ? *m0 : split_index(fb.norms(), N).m0;
    out << "regime " << (split == 0 ? "tight" : "split") << ", m0 " << split << '\n';
    const auto rep = verify_theorem(fb, split, tol);
    out << "orthogonality_defect " << fmt(rep.orthogonality_defect) << '\n'
        << "cross_orthogonality_defect " << fmt(rep.cross_orthogonality_defect) << '\n'
        << "tightness_defect " << fmt(rep.tightness_defect) << '\n'
        << "tight_rank " << rep.tight_rank << " (expected " << rep.expected_rank << ")\n"
        << "block_norm_defect " << fmt(rep.block_norm_defect) << '\n'
        << "block_tightness_defect " << fmt(rep.block_tightness_defect) << '\n'
        << "eigenvector_defect " << fmt(rep.eigenvector_defect) << '\n';
    ok = rep.passed(tol);
    j = io::to_json(rep);
    j["regime"] = split == 0 ? "tight" : "split";
  }
  j["passed"] = ok;
  j["tol"] = tol;
  out << (ok ? "PASS" : "FAIL") << " at tol " << fmt(tol) << '\n';
  if (!flags.out.empty()) emit(j, flags.out, out);
  return ok ? kSuccess : kNumericalFailure;
}

int cmd_transform(const std::string& op, const std::vector<std::string>& files,
                  const CommonFlags& flags, std::ostream& out) {
  const auto need = [&](std::size_t k) {
    if (files.size() != k) {
      throw InputError("transform " + op + " expects " + std::to_string(k) + " input file(s)");
    }
  };
  json result;
  if (op == "modrep") {
    need(1);
    const FilterBank fb = load_bank(files[0], flags);
    result = io::to_json(build_modrep(fb), fb.group());
  } else if (op == "conv") {
    need(2);
    auto [g1, v1] = load_values(files[0]);
    auto [g2, v2] = load_values(files[1]);
    const GroupSpec g = resolve_group(g1 ? g1 : g2, flags);
    result = io::complex_array(convolve(Signal(g, v1), Signal(g, v2)).values());
  } else {
    need(1);
    auto [gf, values] = load_values(files[0]);
    const GroupSpec g = resolve_group(gf, flags);
    if (op == "dft") {
      result = io::complex_array(dft(Signal(g, std::move(values))).values());
    } else if (op == "idft") {
      result = io::complex_array(idft(Spectrum(g, std::move(values))).values());
    } else if (op == "sample") {
      result = io::complex_array(downsample(Signal(g, std::move(values)), resolve_subgroup(g, flags)));
    } else if (op == "upsample") {
      result = io::complex_array(upsample(values, resolve_subgroup(g, flags)).values());
    } else {
      throw InputError("unknown transform " + op);
    }
  }
  emit(result, flags.out, out);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frame potential design and harmonic analysis on finite abelian groups", "abelframe"};
  app.require_subcommand(1);

  CommonFlags flags;
  const auto add_common = [&](CLI::App* sub, bool with_out = true) {
    sub->add_option("--group", flags.group, "group JSON (inline or file), e.g. '[2,4]'");
    sub->add_option("--subgroup", flags.subgroup, "subgroup JSON (inline or file), e.g. '[[0,2]]'");
    if (with_out) sub->add_option("--out", flags.out, "output file (written atomically)");
  };

  std::string problem_file;
  std::string norms;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iters;
  std::optional<double> grad_tol;
  std::optional<double> design_tol;
  auto* design = app.add_subcommand("design", "minimize the frame potential under norm constraints");
  design->add_option("problem", problem_file, "design problem JSON");
  add_common(design);
  design->add_option("--norms", norms, "filter norms, e.g. 3,1,1,1,1");
  design->add_option("--seed", seed, "random seed");
  design->add_option("--max-iters", max_iters, "iteration budget");
  design->add_option("--grad-tol", grad_tol, "Riemannian gradient tolerance");
  design->add_option("--tol", design_tol, "structural verification tolerance");

  std::string bank_file;
  double analyze_eps = 1e-8;
  auto* analyze_cmd = app.add_subcommand("analyze", "frame bounds, frame potential and tightness");
  analyze_cmd->add_option("bank", bank_file, "filterbank JSON");
  add_common(analyze_cmd);
  analyze_cmd->add_option("--filters", flags.filters, "filters JSON (inline or file)");
  analyze_cmd->add_option("--tol", analyze_eps, "tightness tolerance on B/A - 1");

  std::optional<std::size_t> m0;
  double verify_tol = 1e-5;
  auto* verify = app.add_subcommand("verify", "check the minimizer structure of a bank");
  verify->add_option("bank", bank_file, "filterbank or design report JSON");
  add_common(verify);
  verify->add_option("--filters", flags.filters, "filters JSON (inline or file)");
  verify->add_option("--m0", m0, "split index (default: computed from the norms)");
  verify->add_option("--tol", verify_tol, "defect tolerance");

  std::string op;
  std::vector<std::string> inputs;
  auto* transform = app.add_subcommand("transform", "dft | idft | conv | sample | upsample | modrep");
  transform->add_option("op", op, "operation")
      ->required()
      ->check(CLI::IsMember({"dft", "idft", "conv", "sample", "upsample", "modrep"}));
  transform->add_option("inputs", inputs, "input files");
  add_common(transform);

  std::vector<std::string> argv_store{"abelframe"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*design) {
      return cmd_design(problem_file, flags, norms, seed, max_iters, grad_tol, design_tol, out);
    }
    if (*analyze_cmd) return cmd_analyze(bank_file, flags, analyze_eps, out);
    if (*verify) return cmd_verify(bank_file, flags, m0, verify_tol, out);
    return cmd_transform(op, inputs, flags, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const io::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace abelframe::cli
