#include "abelframe/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace abelframe::io {

json to_json(const GroupSpec& g) {
  return json{{"moduli", std::vector<std::int64_t>(g.moduli().begin(), g.moduli().end())}};
}

GroupSpec group_from_json(const json& j) {
  if (j.is_array()) return GroupSpec(j.get<std::vector<std::int64_t>>());
  if (!j.is_object() || !j.contains("moduli")) throw InputError("group must be {\"moduli\": [...]}");
  return GroupSpec(j.at("moduli").get<std::vector<std::int64_t>>());
}

json to_json(const GroupElement& x) { return x.coords; }

GroupElement element_from_json(const GroupSpec& g, const json& j) {
  if (!j.is_array()) throw InputError("group element must be an integer array");
  GroupElement x(j.get<std::vector<std::int64_t>>());
  g.check_element(x);
  return x;
}

json to_json(const Subgroup& h) {
  json gens = json::array();
  for (const auto& g : h.generators()) gens.push_back(to_json(g));
  return json{{"generators", gens}};
}

Subgroup subgroup_from_json(const GroupSpec& g, const json& j) {
  const json* gens = &j;
  if (j.is_object()) {
    if (!j.contains("generators")) throw InputError("subgroup must be {\"generators\": [...]}");
    gens = &j.at("generators");
  }
  if (!gens->is_array()) throw InputError("subgroup generators must be an array");
  std::vector<GroupElement> elems;
  for (const auto& e : *gens) elems.push_back(element_from_json(g, e));
  return Subgroup::closure(g, elems);
}

json complex_array(std::span<const Complex> values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(json::array({v.real(), v.imag()}));
  return out;
}

std::vector<Complex> complex_array_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (v.is_number()) {
      out.emplace_back(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      out.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      throw InputError("complex values must be numbers or [re, im] pairs");
    }
  }
  return out;
}

json to_json(const FilterBank& fb) {
  json filters = json::array();
  for (const auto& f : fb.filters()) filters.push_back(complex_array(f.values()));
  return json{{"group", to_json(fb.group())}, {"subgroup", to_json(fb.subgroup())}, {"filters", filters}};
}

FilterBank bank_from_json(const json& j) {
  if (!j.is_object()) throw InputError("filterbank must be a JSON object");
  // A design report carries its bank under "filters".
  if (j.contains("filters") && j.at("filters").is_object()) return bank_from_json(j.at("filters"));
  for (const char* key : {"group", "subgroup", "filters"}) {
    if (!j.contains(key)) throw InputError(std::string("filterbank is missing \"") + key + "\"");
  }
  const GroupSpec g = group_from_json(j.at("group"));
  Subgroup h = subgroup_from_json(g, j.at("subgroup"));
  std::vector<Signal> filters;
  for (const auto& f : j.at("filters")) filters.emplace_back(g, complex_array_from_json(f));
  return FilterBank(std::move(h), std::move(filters));
}

json character_to_json(const GroupElement& label) { return json{{"label", label.coords}}; }

json character_to_json(const SubgroupCharacter& chi) {
  return json{{"values", complex_array(chi.values())}};
}

json to_json(const SpectralBlocks& blocks, const GroupSpec& g) {
  json list = json::array();
  for (std::size_t l = 0; l < blocks.count(); ++l) {
    json labels = json::array();
    for (auto a : blocks.fiber_labels(l)) labels.push_back(to_json(g.element_at(a)));
    const auto& B = blocks.blocks[l];
    json rows = json::array();
    for (Eigen::Index r = 0; r < B.rows(); ++r) {
      std::vector<Complex> row(static_cast<std::size_t>(B.cols()));
      for (Eigen::Index c = 0; c < B.cols(); ++c) row[static_cast<std::size_t>(c)] = B(r, c);
      rows.push_back(complex_array(row));
    }
    list.push_back(json{{"ell", l}, {"fiber_labels", labels}, {"matrix", rows}});
  }
  return json{{"subgroup_order", blocks.subgroup_order},
              {"index", blocks.index},
              {"filter_count", blocks.filter_count},
              {"blocks", list}};
}

DesignProblem problem_from_json(const json& j) {
  if (!j.is_object()) throw InputError("design problem must be a JSON object");
  for (const char* key : {"group", "subgroup", "norms"}) {
    if (!j.contains(key)) throw InputError(std::string("design problem is missing \"") + key + "\"");
  }
  const GroupSpec g = group_from_json(j.at("group"));
  DesignProblem p{.subgroup = subgroup_from_json(g, j.at("subgroup")),
                  .norms = j.at("norms").get<std::vector<double>>()};
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("max_iters")) p.max_iters = j.at("max_iters").get<std::size_t>();
  if (j.contains("grad_tol")) p.grad_tol = j.at("grad_tol").get<double>();
  if (j.contains("tight_eps")) p.tight_eps = j.at("tight_eps").get<double>();
  if (j.contains("tol")) p.verify_tol = j.at("tol").get<double>();
  p.validate();
  return p;
}

json to_json(const PartitionReport& r) {
  return json{{"m0", r.m0},
              {"orthogonality_defect", r.orthogonality_defect},
              {"cross_orthogonality_defect", r.cross_orthogonality_defect},
              {"tightness_defect", r.tightness_defect},
              {"tight_rank", r.tight_rank},
              {"expected_rank", r.expected_rank},
              {"block_norm_defect", r.block_norm_defect},
              {"block_tightness_defect", r.block_tightness_defect},
              {"eigenvector_defect", r.eigenvector_defect}};
}

json to_json(const UnderdeterminedReport& r) {
  return json{{"orthogonality_defect", r.orthogonality_defect},
              {"eigenvector_defect", r.eigenvector_defect}};
}

json to_json(const DesignReport& r) {
  json j;
  j["filters"] = to_json(r.filters);
  j["fp_trajectory"] = r.fp_trajectory;
  j["fp"] = r.fp;
  j["fp_floor"] = r.fp_floor;
  j["grad_norm"] = r.grad_norm;
  j["bounds"] = json::array({r.bounds.lower, r.bounds.upper});
  j["regime"] = to_string(r.split.regime);
  j["m0"] = r.split.m0;
  j["partition_check"] = r.partition ? to_json(*r.partition) : to_json(*r.underdetermined);
  j["tight"] = r.tight;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["restarts"] = r.restarts;
  return j;
}

namespace {

void dump_value(const json& j, std::string& out, int indent) {
  const auto pad = [&](int k) { out.append(static_cast<std::size_t>(k) * 2, ' '); };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        pad(indent + 1);
        out += json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), out, indent + 1);
      }
      out += '\n';
      pad(indent);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; [re, im] pairs dominate the output.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
      if (flat) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_value(j[i], out, indent);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        pad(indent + 1);
        dump_value(j[i], out, indent + 1);
      }
      out += '\n';
      pad(indent);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += '\n';
  return out;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

json parse_inline_or_file(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("malformed inline JSON: ") + e.what());
    }
  }
  return parse_file(text);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp);
    out << contents;
    if (!out) throw InputError("failed writing " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace abelframe::io
