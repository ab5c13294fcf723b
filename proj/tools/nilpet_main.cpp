// Command-line front end: algebra queries, reduction traces, and windowed
// experiments, emitting deterministic JSON/CSV reports.
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "nilpet/dynsys.hpp"
#include "nilpet/pet.hpp"
#include "nilpet/version.hpp"

using nlohmann::json;
using namespace nilpet;

namespace {

int64_t to_i64(const std::string& s) {
  int64_t v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

std::pair<int64_t, int64_t> parse_window(const std::string& s) {
  const size_t c = s.find(':', 1);
  if (c == std::string::npos)
    throw std::invalid_argument("window must have the form lo:hi, got '" + s + "'");
  return {to_i64(s.substr(0, c)), to_i64(s.substr(c + 1))};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Smallest abelian rank covering every basis index mentioned in the input.
int scan_max_index(const std::vector<std::string>& exprs) {
  int best = 1;
  for (const std::string& e : exprs)
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] == 'S') {
        int v = 0;
        size_t j = i + 1;
        while (j < e.size() && std::isdigit(static_cast<unsigned char>(e[j])) && v < 1000)
          v = v * 10 + (e[j++] - '0');
        best = std::max(best, v);
      }
  return best;
}

Model resolve_model(const std::string& spec, const std::vector<std::string>& exprs) {
  if (spec.empty()) return abelian_model(scan_max_index(exprs));
  if (spec == "heisenberg") return heisenberg_model();
  if (spec == "ut4") return ut4_model();
  if (spec.rfind("abelian", 0) == 0) {
    if (spec == "abelian") return abelian_model(1);
    if (spec.size() > 8 && spec[7] == ':')
      return abelian_model(static_cast<int>(to_i64(spec.substr(8))));
  }
  return load_model_json(spec);
}

SubstitutionSystem make_subst(const std::string& path, size_t min_length) {
  if (path.empty()) return SubstitutionSystem::chacon(min_length);
  return SubstitutionSystem::load_json(path);
}

json make_report(const std::string& command, json config, json results) {
  json r;
  r["command"] = command;
  r["config"] = std::move(config);
  r["results"] = std::move(results);
  r["tool"] = "nilpet";
  r["version"] = kVersion;
  return r;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << text;
}

void emit_json(const json& rep, const std::string& out_path) {
  emit(rep.dump(2) + "\n", out_path);
}

std::vector<std::string> gather_system(const std::vector<std::string>& exprs,
                                       const std::string& file) {
  std::vector<std::string> all = exprs;
  if (!file.empty()) {
    const json arr = json::parse(slurp(file));
    if (!arr.is_array()) throw std::invalid_argument("system file must be a JSON array");
    for (const auto& e : arr) all.push_back(e.get<std::string>());
  }
  if (all.empty()) throw std::invalid_argument("no system elements given");
  return all;
}

std::vector<GammaPolynomial> parse_all(const std::vector<std::string>& texts, const Model& m) {
  std::vector<GammaPolynomial> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(parse_gpoly(t, m));
  return out;
}

std::vector<IntPoly> parse_polys(const std::vector<std::string>& texts) {
  std::vector<IntPoly> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(parse_poly(t));
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nilpotent-group polynomial algebra, reduction traces and subshift experiments"};
  app.require_subcommand(1);

  std::string model_spec, out_path, format = "text", ret_format = "csv";
  std::string file_in, csv_in, subst_path, window = "0:10000";
  std::vector<std::string> exprs, polys_s, v_pats;
  std::string u_pat, rule = "quotient", r_poly = "1";
  int ell = 2;
  long bound = 1000000;
  int64_t gap = 0, run = 0, kmax = 1000000;
  size_t w_len = 2, samples = 50, min_length = 1000000, max_steps = 20000, max_size = 20000;
  uint64_t seed = 12345;

  auto* c_weight = app.add_subcommand("weight", "Weight and leading coefficient of one form");
  c_weight->add_option("expr", exprs, "form in the factor notation")->required()->expected(1);
  c_weight->add_option("--model", model_spec, "builtin name or model JSON file");
  c_weight->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  c_weight->add_option("--out", out_path);

  auto* c_wvec = app.add_subcommand("wvec", "Weight vector of a system");
  c_wvec->add_option("expr", exprs, "system elements");
  c_wvec->add_option("--file", file_in, "JSON array of element strings");
  c_wvec->add_option("--model", model_spec);
  c_wvec->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  c_wvec->add_option("--out", out_path);

  auto* c_equiv = app.add_subcommand("equiv", "Equivalence of two forms");
  c_equiv->add_option("expr", exprs)->required()->expected(2);
  c_equiv->add_option("--model", model_spec);
  c_equiv->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  c_equiv->add_option("--out", out_path);

  auto* c_group = app.add_subcommand("group-check", "Validate a group model");
  c_group->add_option("--model", model_spec)->required();
  c_group->add_option("--out", out_path);

  auto* c_pet = app.add_subcommand("pet-reduce", "Run the reduction to a trace");
  c_pet->add_option("expr", exprs);
  c_pet->add_option("--file", file_in, "JSON array of element strings");
  c_pet->add_option("--model", model_spec);
  c_pet->add_option("--rule", rule)->check(CLI::IsMember({"quotient", "proof_step"}));
  c_pet->add_option("--ell", ell, "shifts per step minus one");
  c_pet->add_option("--bound", bound, "shift search bound");
  c_pet->add_option("--max-steps", max_steps);
  c_pet->add_option("--max-size", max_size);
  c_pet->add_option("--out", out_path);

  auto* c_classify = app.add_subcommand("classify", "Classify a membership CSV");
  c_classify->add_option("--in", csv_in, "CSV of n,member rows")->required();
  c_classify->add_option("--gap", gap, "G")->required();
  c_classify->add_option("--run", run, "L")->required();
  c_classify->add_option("--out", out_path);

  auto* c_returns = app.add_subcommand("returns", "Return-time set of cylinder patterns");
  c_returns->add_option("--u", u_pat, "base cylinder pattern")->required();
  c_returns->add_option("--v", v_pats, "target pattern per polynomial")->required();
  c_returns->add_option("--poly", polys_s, "displacement polynomial in n")->required();
  c_returns->add_option("--window", window, "n range lo:hi");
  c_returns->add_option("--subst", subst_path, "substitution JSON (default Chacon)");
  c_returns->add_option("--min-length", min_length);
  c_returns->add_option("--format", ret_format)->check(CLI::IsMember({"csv", "json"}));
  c_returns->add_option("--out", out_path);

  auto* c_density = app.add_subcommand("density", "Tuple coverage from sampled base points");
  c_density->add_option("--poly", polys_s)->required();
  c_density->add_option("--w", w_len, "pattern length");
  c_density->add_option("--window", window);
  c_density->add_option("--samples", samples);
  c_density->add_option("--seed", seed);
  c_density->add_option("--subst", subst_path);
  c_density->add_option("--min-length", min_length);
  c_density->add_option("--out", out_path);

  auto* c_nested = app.add_subcommand("nested", "Nested return-time construction");
  c_nested->add_option("--poly", polys_s)->required();
  c_nested->add_option("--v", v_pats)->required();
  c_nested->add_option("--r", r_poly, "radius polynomial");
  c_nested->add_option("--ell", ell, "number of steps minus one");
  c_nested->add_option("--kmax", kmax);
  c_nested->add_option("--subst", subst_path);
  c_nested->add_option("--min-length", min_length);
  c_nested->add_option("--out", out_path);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e);
      return rc == 0 ? 0 : 2;
    }

    if (c_weight->parsed()) {
      const Model m = resolve_model(model_spec, exprs);
      const GammaPolynomial g = parse_gpoly(exprs[0], m);
      const Weight w = weight(g);
      const Rat lead = leading_coefficient(g);
      if (format == "json") {
        json res;
        res["weight"] = {w.l, w.k};
        res["leading"] = lead.get_str();
        json cfg;
        cfg["expr"] = exprs[0];
        cfg["model"] = m->name;
        emit_json(make_report("weight", cfg, res), out_path);
      } else {
        emit(format_weight(w) + "\nleading " + lead.get_str() + "\n", out_path);
      }
      return 0;
    }

    if (c_wvec->parsed()) {
      const std::vector<std::string> texts = gather_system(exprs, file_in);
      const Model m = resolve_model(model_spec, texts);
      const PolySystem sys(parse_all(texts, m));
      const WeightVector wv = weight_vector(sys);
      if (format == "json") {
        json res;
        res["weight_vector"] = json::array();
        for (const auto& e : wv.entries) res["weight_vector"].push_back({e.w.l, e.w.k, e.multiplicity});
        res["printed"] = format_weight_vector(wv);
        json cfg;
        cfg["elements"] = texts;
        cfg["model"] = m->name;
        emit_json(make_report("wvec", cfg, res), out_path);
      } else {
        emit(format_weight_vector(wv) + "\n", out_path);
      }
      return 0;
    }

    if (c_equiv->parsed()) {
      const Model m = resolve_model(model_spec, exprs);
      const bool eq = equivalent(parse_gpoly(exprs[0], m), parse_gpoly(exprs[1], m));
      if (format == "json") {
        json res;
        res["equivalent"] = eq;
        json cfg;
        cfg["exprs"] = exprs;
        cfg["model"] = m->name;
        emit_json(make_report("equiv", cfg, res), out_path);
      } else {
        emit(std::string(eq ? "true" : "false") + "\n", out_path);
      }
      return 0;
    }

    if (c_group->parsed()) {
      const Model m = resolve_model(model_spec, {});
      validate_model(*m);
      json res;
      res["model"] = m->name;
      res["s"] = m->s;
      res["matrix_oracle"] = m->rep.has_value();
      res["status"] = "ok";
      json cfg;
      cfg["model"] = model_spec;
      emit_json(make_report("group-check", cfg, res), out_path);
      return 0;
    }

    if (c_pet->parsed()) {
      const std::vector<std::string> texts = gather_system(exprs, file_in);
      const Model m = resolve_model(model_spec, texts);
      const PolySystem sys(parse_all(texts, m));
      ReduceOptions opts;
      opts.rule = rule == "quotient" ? ReduceRule::quotient : ReduceRule::proof_step;
      opts.ell = ell;
      opts.shift_bound = bound;
      opts.max_steps = max_steps;
      opts.max_size = max_size;
      const ReductionTrace trace = pet_reduce(sys, opts);
      json res;
      res["trace"] = trace_to_json(trace);
      res["steps"] = trace.steps.size();
      res["initial_weight_vector"] = format_weight_vector(trace.steps.front().wv);
      res["terminal"] = json::array();
      for (const GammaPolynomial& g : trace.terminal.elements())
        res["terminal"].push_back(print_gpoly(g));
      json cfg;
      cfg["elements"] = texts;
      cfg["model"] = m->name;
      cfg["rule"] = rule;
      cfg["ell"] = ell;
      cfg["bound"] = bound;
      emit_json(make_report("pet-reduce", cfg, res), out_path);
      return 0;
    }

    if (c_classify->parsed()) {
      std::ifstream in(csv_in, std::ios::binary);
      if (!in) throw std::invalid_argument("cannot open file: " + csv_in);
      const WindowSet S = read_csv(in);
      json cfg;
      cfg["in"] = csv_in;
      cfg["gap"] = gap;
      cfg["run"] = run;
      emit_json(make_report("classify", cfg, report_to_json(classify(S, gap, run))), out_path);
      return 0;
    }

    if (c_returns->parsed()) {
      if (polys_s.size() != v_pats.size())
        throw std::invalid_argument("need exactly one --v per --poly");
      const auto [n_lo, n_hi] = parse_window(window);
      const SubstitutionSystem sys = make_subst(subst_path, min_length);
      const Cylinder U(sys, u_pat);
      std::vector<std::pair<IntPoly, Cylinder>> pairs;
      for (size_t i = 0; i < polys_s.size(); ++i)
        pairs.emplace_back(parse_poly(polys_s[i]), Cylinder(sys, v_pats[i]));
      const ReturnSet rs = return_set(sys, U, pairs, n_lo, n_hi);
      if (ret_format == "json") {
        json res;
        res["members"] = rs.members.members();
        res["member_count"] = rs.members.count();
        res["undecided"] = rs.undecided.members();
        res["undecided_count"] = rs.undecided.count();
        json cfg;
        cfg["u"] = u_pat;
        cfg["v"] = v_pats;
        cfg["poly"] = polys_s;
        cfg["window"] = window;
        cfg["subst"] = subst_path.empty() ? "chacon" : subst_path;
        emit_json(make_report("returns", cfg, res), out_path);
      } else {
        std::ostringstream csv;
        write_csv(rs.members, csv);
        emit(csv.str(), out_path);
      }
      return 0;
    }

    if (c_density->parsed()) {
      const auto [n_lo, n_hi] = parse_window(window);
      const SubstitutionSystem sys = make_subst(subst_path, min_length);
      const CoverageReport rep =
          density_experiment(sys, parse_polys(polys_s), w_len, n_lo, n_hi, samples, seed);
      json cfg;
      cfg["poly"] = polys_s;
      cfg["w"] = w_len;
      cfg["window"] = window;
      cfg["samples"] = samples;
      cfg["seed"] = seed;
      cfg["subst"] = subst_path.empty() ? "chacon" : subst_path;
      emit_json(make_report("density", cfg, coverage_to_json(rep)), out_path);
      return 0;
    }

    if (c_nested->parsed()) {
      if (polys_s.size() != v_pats.size())
        throw std::invalid_argument("need exactly one --v per --poly");
      const SubstitutionSystem sys = make_subst(subst_path, min_length);
      std::vector<Cylinder> Vs;
      for (const std::string& p : v_pats) Vs.emplace_back(sys, p);
      const NestedReturn nr = nested_return_construction(sys, parse_polys(polys_s), Vs,
                                                         parse_poly(r_poly), ell, kmax);
      json cfg;
      cfg["poly"] = polys_s;
      cfg["v"] = v_pats;
      cfg["r"] = r_poly;
      cfg["ell"] = ell;
      cfg["kmax"] = kmax;
      cfg["subst"] = subst_path.empty() ? "chacon" : subst_path;
      emit_json(make_report("nested", cfg, nested_to_json(nr)), out_path);
      return 0;
    }
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ExprError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EmptyWindow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const WindowMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const WindowExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const SearchExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
