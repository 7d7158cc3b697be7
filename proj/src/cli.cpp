#include "ptk/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ptk/json_io.hpp"

namespace ptk {

namespace {

constexpr const char* kVersion = "1";

Json load_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return Json::parse(arg);
  std::ifstream in(arg);
  if (!in) fail(Err::BadInput, "cannot open " + arg);
  Json j;
  in >> j;
  return j;
}

Window parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string name = text.substr(0, colon);
    int h = std::stoi(text.substr(colon + 1));
    if (name == "identity") return Window::identity(h);
    if (name == "evens") return Window::evens(h);
    if (name == "odds") return Window::odds(h);
    fail(Err::BadInput, "unknown window shape: " + name);
  }
  std::vector<int> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) vals.push_back(std::stoi(tok));
  return Window(std::move(vals));
}

std::vector<FinSet> parse_sets(const std::string& text) {
  std::vector<FinSet> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ';')) out.push_back(FinSet::parse(tok));
  return out;
}

std::vector<Rational> parse_coeffs(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(parse_rational(tok));
  return out;
}

void emit(std::ostream& out, Json payload) {
  payload["ptk_version"] = kVersion;
  out << payload.dump(2) << "\n";
}

Json sets_to_json(const std::vector<FinSet>& sets) {
  Json a = Json::array();
  for (const auto& s : sets) a.push_back(finset_to_json(s));
  return a;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"plegma toolkit: regular thin families, plegma combinatorics and norming-set norms"};
  app.require_subcommand(1);

  std::string family_arg, other_arg, window_arg = "identity:32", sets_arg, s0_arg, s_arg;
  std::string vector_arg, space_arg, seq_arg, coloring_arg = "const", op_arg, coeffs_arg, t_arg;
  std::string method_arg = "exact", p_arg = "1", delta_arg = "1", c_arg = "1", eps_arg = "1/10";
  std::string q_arg, pp_arg;
  int max_n = 12, l = 2, target = 6, k = 1, n = 1, steps = 6, nn = 0, threads = 1;
  long budget = 200000;
  std::uint64_t seed = 12345;
  double tol = 1e-9;
  bool three = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol);
    cmd->add_option("--seed", seed);
    cmd->add_option("--budget", budget);
    cmd->add_option("--max-n", max_n);
    cmd->add_option("--threads", threads);
  };

  // family ------------------------------------------------------------------
  auto* family = app.add_subcommand("family", "family queries");
  auto* f_order = family->add_subcommand("order");
  f_order->add_option("--family", family_arg)->required();
  add_common(f_order);
  auto* f_members = family->add_subcommand("members");
  f_members->add_option("--family", family_arg)->required();
  add_common(f_members);
  auto* f_closure = family->add_subcommand("closure");
  f_closure->add_option("--family", family_arg)->required();
  add_common(f_closure);
  auto* f_check = family->add_subcommand("check");
  f_check->add_option("--family", family_arg)->required();
  add_common(f_check);
  auto* f_transform = family->add_subcommand("transform");
  f_transform->add_option("--family", family_arg)->required();
  f_transform->add_option("--op", op_arg)->required();
  f_transform->add_option("--window", window_arg);
  f_transform->add_option("--n", nn);
  f_transform->add_option("--t", t_arg);
  f_transform->add_option("--other", other_arg);
  add_common(f_transform);

  // plegma ------------------------------------------------------------------
  auto* plegma = app.add_subcommand("plegma", "plegma predicates, tuples and paths");
  auto* p_check = plegma->add_subcommand("check");
  p_check->add_option("--sets", sets_arg)->required();
  auto* p_enum = plegma->add_subcommand("enum");
  p_enum->add_option("--family", family_arg)->required();
  p_enum->add_option("--l", l);
  add_common(p_enum);
  auto* p_path = plegma->add_subcommand("path");
  p_path->add_option("--family", family_arg)->required();
  p_path->add_option("--window", window_arg);
  p_path->add_option("--s0", s0_arg)->required();
  p_path->add_option("--s", s_arg)->required();
  p_path->add_flag("--three", three);
  add_common(p_path);
  auto* p_dist = plegma->add_subcommand("distance");
  p_dist->add_option("--family", family_arg)->required();
  p_dist->add_option("--s0", s0_arg)->required();
  p_dist->add_option("--s", s_arg)->required();
  add_common(p_dist);
  auto* p_skip = plegma->add_subcommand("skipped");
  p_skip->add_option("--family", family_arg)->required();
  p_skip->add_option("--window", window_arg);
  add_common(p_skip);

  // ramsey ------------------------------------------------------------------
  auto* ramsey = app.add_subcommand("ramsey", "bounded homogeneous searches");
  auto* r_mono = ramsey->add_subcommand("mono");
  r_mono->add_option("--family", family_arg)->required();
  r_mono->add_option("--l", l);
  r_mono->add_option("--coloring", coloring_arg);
  r_mono->add_option("--window", window_arg);
  r_mono->add_option("--target", target);
  add_common(r_mono);
  auto* r_part = ramsey->add_subcommand("partition");
  r_part->add_option("--family", family_arg)->required();
  r_part->add_option("--piece", coloring_arg);
  r_part->add_option("--window", window_arg);
  r_part->add_option("--target", target);
  add_common(r_part);
  auto* r_dense = ramsey->add_subcommand("dense");
  r_dense->add_option("--sets", sets_arg)->required();
  r_dense->add_option("--l", l);
  add_common(r_dense);
  auto* r_embed = ramsey->add_subcommand("embed");
  r_embed->add_option("--family", family_arg)->required();
  r_embed->add_option("--other", other_arg)->required();
  r_embed->add_option("--window", window_arg);
  add_common(r_embed);

  // norm --------------------------------------------------------------------
  auto* norm_cmd = app.add_subcommand("norm", "certified norm evaluation");
  auto* n_eval = norm_cmd->add_subcommand("eval");
  n_eval->add_option("--vector", vector_arg)->required();
  n_eval->add_option("--method", method_arg);
  add_common(n_eval);
  auto* n_brute = norm_cmd->add_subcommand("brute");
  n_brute->add_option("--vector", vector_arg)->required();
  add_common(n_brute);
  auto* n_propp = norm_cmd->add_subcommand("property-p");
  n_propp->add_option("--space", space_arg)->required();
  n_propp->add_option("--delta", delta_arg);
  n_propp->add_option("--k", k);
  add_common(n_propp);

  // sm ----------------------------------------------------------------------
  auto* sm = app.add_subcommand("sm", "spreading-model estimators");
  auto* s_profile = sm->add_subcommand("profile");
  s_profile->add_option("--seq", seq_arg)->required();
  s_profile->add_option("--coeffs", coeffs_arg)->required();
  s_profile->add_option("--window", window_arg);
  s_profile->add_option("--steps", steps);
  add_common(s_profile);
  auto* s_const = sm->add_subcommand("constants");
  s_const->add_option("--seq", seq_arg)->required();
  s_const->add_option("--p", p_arg);
  s_const->add_option("--n", n);
  s_const->add_option("--window", window_arg);
  add_common(s_const);
  auto* s_cesaro = sm->add_subcommand("cesaro");
  s_cesaro->add_option("--k", k);
  s_cesaro->add_option("--n", n);
  s_cesaro->add_option("--window", window_arg);
  add_common(s_cesaro);
  auto* s_fcesaro = sm->add_subcommand("f-cesaro");
  s_fcesaro->add_option("--family", family_arg)->required();
  s_fcesaro->add_option("--seq", seq_arg)->required();
  s_fcesaro->add_option("--n", n);
  s_fcesaro->add_option("--window", window_arg);
  add_common(s_fcesaro);
  auto* s_boost = sm->add_subcommand("boost");
  s_boost->add_option("--seq", seq_arg)->required();
  s_boost->add_option("--family", family_arg)->required();
  s_boost->add_option("--c", c_arg);
  s_boost->add_option("--eps", eps_arg);
  s_boost->add_option("--window", window_arg);
  add_common(s_boost);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (f_order->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      auto o = f->order();
      Json j = {{"order", o.to_string()}};
      if (!o.note.empty()) j["note"] = o.note;
      emit(out, j);
    } else if (f_members->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      emit(out, {{"members", sets_to_json(f->members(max_n))}});
    } else if (f_closure->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      emit(out, {{"closure", sets_to_json(f->closure_members(max_n))}});
    } else if (f_check->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      auto rep = f->predicates(max_n);
      Json j = {{"thin", verdict_name(rep.thin)},
                {"hereditary", verdict_name(rep.hereditary)},
                {"spreading", verdict_name(rep.spreading)},
                {"regular_thin", verdict_name(rep.regular_thin)}};
      if (rep.thin_witness) j["thin_witness"] = finset_to_json(*rep.thin_witness);
      emit(out, j);
    } else if (f_transform->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      TransformArgs targs;
      TransformOp op;
      if (op_arg == "restrict") op = TransformOp::Restrict;
      else if (op_arg == "derived_at") op = TransformOp::DerivedAt;
      else if (op_arg == "section") op = TransformOp::Section;
      else if (op_arg == "shift") op = TransformOp::Shift;
      else if (op_arg == "preimage") op = TransformOp::Preimage;
      else if (op_arg == "quotient") op = TransformOp::Quotient;
      else if (op_arg == "direct_sum") op = TransformOp::DirectSum;
      else fail(Err::BadInput, "unknown transform op: " + op_arg);
      if (op == TransformOp::Restrict || op == TransformOp::Shift ||
          op == TransformOp::Preimage || op == TransformOp::Quotient)
        targs.window = parse_window(window_arg);
      if (op == TransformOp::DerivedAt) targs.n = nn;
      if (op == TransformOp::Section) targs.t = FinSet::parse(t_arg);
      if (op == TransformOp::DirectSum) targs.other = family_from_json(load_json_arg(other_arg));
      emit(out, {{"family", family_to_json(transform(f, op, targs))}});
    } else if (p_check->parsed()) {
      emit(out, {{"plegma", is_plegma(parse_sets(sets_arg))}});
    } else if (p_enum->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      auto tuples = enumerate_plm(*f, l, max_n);
      Json arr = Json::array();
      for (const auto& t : tuples) arr.push_back(sets_to_json(t));
      emit(out, {{"tuples", arr}, {"count", tuples.size()}});
    } else if (p_path->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      Window L = parse_window(window_arg);
      auto path = three ? three_plegma_path(*f, L, FinSet::parse(s0_arg), FinSet::parse(s_arg))
                        : plegma_path(*f, L, FinSet::parse(s0_arg), FinSet::parse(s_arg));
      emit(out, {{"path", sets_to_json(path)}, {"length", path.size() - 1}});
    } else if (p_dist->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      auto d = bfs_distance(*f, max_n, FinSet::parse(s0_arg), FinSet::parse(s_arg));
      emit(out, {{"distance", d ? Json(*d) : Json("unreachable")}});
    } else if (p_skip->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      Window L = parse_window(window_arg);
      emit(out, {{"skipped", sets_to_json(skipped_restriction(*f, L, max_n))}});
    } else if (r_mono->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      Window M = parse_window(window_arg);
      auto coloring = Coloring::by_name(coloring_arg, l);
      auto oc = find_monochromatic(*f, l, coloring, M, target, budget);
      Json j = search_outcome_to_json(oc);
      if (oc.found) j["revalidated"] = revalidate_monochromatic(*f, l, coloring, *oc.witness, oc.color);
      emit(out, j);
    } else if (r_part->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      Window M = parse_window(window_arg);
      auto coloring = Coloring::by_name(coloring_arg, 1);
      auto piece = [&coloring](const FinSet& s) { return coloring.eval({s}); };
      auto oc = find_homogeneous_partition(*f, piece, M, target, budget);
      Json j = search_outcome_to_json(oc);
      if (oc.found) j["revalidated"] = revalidate_partition(*f, piece, *oc.witness, oc.color);
      emit(out, j);
    } else if (r_dense->parsed()) {
      auto found = find_plegma_in_dense(parse_sets(sets_arg), l);
      emit(out, found ? Json{{"tuple", sets_to_json(*found)}} : Json{{"tuple", nullptr}});
    } else if (r_embed->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      auto g = family_from_json(load_json_arg(other_arg));
      Window M = parse_window(window_arg);
      auto oc = find_shift_embedding(*f, *g, M, max_n, budget);
      Json j = search_outcome_to_json(oc);
      if (oc.found) j["revalidated"] = revalidate_shift_embedding(*f, *g, *oc.witness, max_n);
      emit(out, j);
    } else if (n_eval->parsed()) {
      auto v = vector_from_json(load_json_arg(vector_arg));
      NormMethod m = NormMethod::Exact;
      if (method_arg == "branch_bound") m = NormMethod::BranchBound;
      else if (method_arg == "brute") m = NormMethod::Brute;
      else if (method_arg != "exact") fail(Err::BadInput, "unknown method: " + method_arg);
      emit(out, norm_result_to_json(norm(v, m, tol)));
    } else if (n_brute->parsed()) {
      auto v = vector_from_json(load_json_arg(vector_arg));
      emit(out, norm_result_to_json(brute_force_norm(v)));
    } else if (n_propp->parsed()) {
      auto space = space_from_json(load_json_arg(space_arg));
      auto w = property_p_witness(space, parse_rational(delta_arg), k, budget);
      Json j = {{"found", w.found}, {"checked", w.checked}};
      if (w.found) {
        j["blocks"] = sets_to_json(w.blocks);
        j["sum_norm"] = w.sum_norm.to_string();
      }
      emit(out, j);
    } else if (s_profile->parsed()) {
      auto seq = seq_from_json(load_json_arg(seq_arg));
      Window M = parse_window(window_arg);
      auto prof = sm_profile(seq, parse_coeffs(coeffs_arg), M, steps);
      prof.seed = seed;
      emit(out, profile_to_json(prof));
    } else if (s_const->parsed()) {
      auto seq = seq_from_json(load_json_arg(seq_arg));
      Window M = parse_window(window_arg);
      auto lp = lp_constants(seq, parse_rational(p_arg), n, M, budget, seed);
      emit(out, {{"c_lower", lp.c_lower},
                 {"C_upper", lp.C_upper},
                 {"tuples_sampled", lp.tuples_sampled},
                 {"worst_tuple", sets_to_json(lp.worst_tuple)},
                 {"seed", lp.seed}});
    } else if (s_cesaro->parsed()) {
      Window M = parse_window(window_arg);
      if (M.horizon() < (k + 2) * n) M = Window::identity((k + 2) * n);
      auto res = cesaro_norm(k, M, n);
      emit(out, {{"lower_bound", rational_to_string(res.bound)},
                 {"norm", norm_result_to_json(res.value)},
                 {"support", res.y.support_size()}});
    } else if (s_fcesaro->parsed()) {
      auto f = family_from_json(load_json_arg(family_arg));
      auto seq = seq_from_json(load_json_arg(seq_arg));
      Window M = parse_window(window_arg);
      auto [vec, r] = f_cesaro_sum(*f, seq, M, n);
      emit(out, {{"vector", vector_to_json(vec)}, {"norm", norm_result_to_json(r)}});
    } else if (s_boost->parsed()) {
      auto seq = seq_from_json(load_json_arg(seq_arg));
      auto f = family_from_json(load_json_arg(family_arg));
      Window M = parse_window(window_arg);
      auto boosted = boost_l1(seq, *f, M, parse_rational(c_arg), parse_rational(eps_arg), budget);
      emit(out, {{"seq", seq_to_json(boosted)}});
    } else {
      err << "usage error: no subcommand\n";
      return 2;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ptk
