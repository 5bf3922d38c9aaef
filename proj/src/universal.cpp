#include "pep/universal.hpp"

#include "pep/errors.hpp"

namespace pep {

namespace {

std::string fresh_token(const Alphabet& a, const std::string& base) {
  if (!a.find(base)) return base;
  for (int i = 1;; ++i) {
    std::string t = base + std::to_string(i);
    if (!a.find(t)) return t;
  }
}

AlphabetPtr extend(const Alphabet& a, const std::string& token) {
  auto tokens = a.tokens();
  tokens.push_back(token);
  return make_alphabet(std::move(tokens));
}

// The same automaton read over a larger alphabet; new letters have no moves.
Nfa lift(const Dfa& d, const AlphabetPtr& big) {
  Nfa n(big);
  for (State q = 0; q < d.state_count(); ++q) n.add_state();
  for (State q = 0; q < d.state_count(); ++q) {
    if (d.is_accepting(q)) n.set_accepting(q);
    for (Symbol a = 0; a < d.alphabet()->size(); ++a) n.add_transition(q, a, d.next(q, a));
  }
  n.set_initial(d.initial());
  return n;
}

Language padded(const Language& l, const AlphabetPtr& big, Symbol z, bool before) {
  Nfa zs = star(Nfa::letter(big, z));
  Nfa body = lift(l.dfa, big);
  Language out{compile(before ? concat(zs, body) : concat(body, zs)), std::nullopt};
  if (l.regex) {
    Regex zr = Regex::star(Regex::symbol(z));
    out.regex = before ? Regex::concat({zr, *l.regex}) : Regex::concat({*l.regex, zr});
  }
  return out;
}

Morphism extend_morphism(const Morphism& m, const AlphabetPtr& big) {
  auto images = m.images();
  images.emplace_back();
  return Morphism(big, m.target(), std::move(images));
}

void require_reducible(const PepInstance& inst, const char* what) {
  if (inst.variant() == Variant::co_and_dir)
    throw PreconditionError(std::string(what) + ": co&dir instances are not supported");
  if (!is_regular(inst.rp())) throw PreconditionError(std::string(what) + ": R' must be regular");
}

Language mirrored(const Language& l) {
  Language out{compile(mirror_language(l.dfa.to_nfa())), std::nullopt};
  if (l.regex) out.regex = mirror(*l.regex);
  return out;
}

bool r_bounded_by(const PepInstance& inst, std::size_t max_len) {
  return compile(strip_short(inst.r().dfa.to_nfa(), max_len)).is_empty();
}

// Walks R up to max_len; `fn` returns false to stop.
SearchStats walk_r(const PepInstance& inst, const SearchOptions& opts,
                   const std::function<bool(const Word&, bool)>& fn) {
  SearchStats stats;
  stats.lengths_searched = opts.max_len + 1;
  for_each_word(inst.r().dfa, opts.max_len, [&](const Word& w) {
    if (++stats.nodes > opts.node_budget) throw BudgetExceeded("node budget exhausted", stats.nodes);
    return fn(w, check_solution(inst, w).ok());
  });
  return stats;
}

}  // namespace

PepInstance pad_forall_to_forall_inf(const PepInstance& inst) {
  require_reducible(inst, "padding");
  AlphabetPtr big = extend(*inst.sigma(), fresh_token(*inst.sigma(), "z"));
  const Symbol z = static_cast<Symbol>(inst.sigma()->size());
  const bool before = inst.variant() == Variant::dir_partial;
  SideConstraint rp = padded(std::get<Language>(inst.rp()), big, z, before);
  return PepInstance(inst.variant(), extend_morphism(inst.u(), big), extend_morphism(inst.v(), big),
                     padded(inst.r(), big, z, before), std::move(rp));
}

ForallReduction reduce_to_forall_inf_pep(const PepInstance& inst) {
  require_reducible(inst, "reduction");
  if (inst.variant() == Variant::dir_partial) {
    ForallReduction m = reduce_to_forall_inf_pep(mirror_instance(inst));
    return ForallReduction{mirror_instance(m.output), mirrored(m.x1), mirrored(m.x2),
                           mirrored(m.x3), m.k_r, m.pad};
  }
  const AlphabetPtr& sigma = inst.sigma();
  const std::size_t k_r = size_bounds(inst.r().dfa).k_r;
  Language x1 = inst.r();
  Language empty{empty_dfa(sigma), Regex::empty()};
  if (inst.variant() == Variant::plain)
    return ForallReduction{inst, x1, empty, empty, k_r, std::nullopt};

  const Nfa rn = inst.r().dfa.to_nfa();
  const Dfa& rp = inst.rp_dfa();
  Language x2 = Language::from_dfa(
      combine(BoolOp::intersection, compile(suffix_language(rn, 0, false)), rp));
  Language x3 = Language::from_dfa(
      combine(BoolOp::intersection, compile(suffix_language(rn, k_r, true)), rp));
  Language no_rp{empty_dfa(sigma), Regex::empty()};

  if (x3.dfa.is_empty()) {
    Language out = x2.dfa.is_empty()
                       ? x1
                       : Language::from_dfa(combine(BoolOp::union_, x1.dfa, x2.dfa));
    PepInstance output(Variant::plain, inst.u(), inst.v(), std::move(out), std::move(no_rp));
    return ForallReduction{std::move(output), std::move(x1), std::move(x2), std::move(x3), k_r,
                           std::nullopt};
  }

  AlphabetPtr big = extend(*sigma, fresh_token(*sigma, "z"));
  const Symbol z = static_cast<Symbol>(sigma->size());
  Nfa all = union_of(union_of(lift(x1.dfa, big), lift(x2.dfa, big)),
                     concat(lift(x3.dfa, big), star(Nfa::letter(big, z))));
  PepInstance output(Variant::plain, extend_morphism(inst.u(), big), extend_morphism(inst.v(), big),
                     Language{compile(all), std::nullopt}, Language{empty_dfa(big), Regex::empty()});
  return ForallReduction{std::move(output), std::move(x1), std::move(x2), std::move(x3), k_r, z};
}

std::optional<LoopCertificate> find_loop_certificate(const PepInstance& inst, WordView sigma) {
  const Dfa& d = inst.r().dfa;
  const std::size_t n = sigma.size();
  std::vector<State> q(n + 1);
  std::vector<long> diff(n + 1, 0);
  q[0] = d.initial();
  for (std::size_t i = 0; i < n; ++i) {
    q[i + 1] = d.next(q[i], sigma[i]);
    diff[i + 1] = diff[i] + static_cast<long>(inst.u().image(sigma[i]).size()) -
                  static_cast<long>(inst.v().image(sigma[i]).size());
  }
  const long base = diff[n];
  std::optional<LoopCertificate> best;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (q[i] != q[j]) continue;
      const long step = diff[j] - diff[i];
      if (step <= 0) continue;
      // α·β^k·γ has |u| − |v| = base + (k − 1)·step.
      std::size_t k = 0;
      while (base + (static_cast<long>(k) - 1) * step <= 0) ++k;
      if (!best || k < best->from_k)
        best = LoopCertificate{slice(sigma, 0, i), slice(sigma, i, j), slice(sigma, j, n), k};
    }
  return best;
}

UniversalVerdict forall_check(const PepInstance& inst, const SearchOptions& opts) {
  UniversalVerdict res;
  res.max_len = opts.max_len;
  res.stats = walk_r(inst, opts, [&](const Word& w, bool ok) {
    if (ok) return true;
    ++res.non_solutions_seen;
    if (!res.counterexample) res.counterexample = w;
    if (auto loop = find_loop_certificate(inst, w)) {
      res.loop = std::move(loop);
      return false;
    }
    return true;
  });
  res.kind = res.loop             ? UniversalVerdict::Kind::fails_infinitely
             : res.counterexample ? UniversalVerdict::Kind::fails
                                  : UniversalVerdict::Kind::holds_up_to;
  return res;
}

UniversalVerdict forall_inf_check(const PepInstance& inst, const SearchOptions& opts) {
  UniversalVerdict res = forall_check(inst, opts);
  if (res.kind == UniversalVerdict::Kind::fails) res.kind = UniversalVerdict::Kind::holds_up_to;
  return res;
}

CountResult count_non_solutions(const PepInstance& inst, const SearchOptions& opts) {
  CountResult res;
  res.max_len = opts.max_len;
  res.stats = walk_r(inst, opts, [&](const Word& w, bool ok) {
    if (ok) return true;
    ++res.count;
    if (auto loop = find_loop_certificate(inst, w)) {
      res.loop = std::move(loop);
      return false;
    }
    return true;
  });
  if (res.loop) {
    res.kind = CountResult::Kind::infinite;
    res.justification = "a loop with |u| > |v| yields a non-solution for every iteration count";
  } else if (r_bounded_by(inst, opts.max_len)) {
    res.kind = CountResult::Kind::exact;
    res.justification = "R has no word longer than the search bound";
  } else {
    res.kind = CountResult::Kind::finite_at_least;
  }
  return res;
}

NonSolutionClass classify_non_solution(const PepInstance& inst, WordView sigma) {
  NonSolutionClass c;
  const Word us = inst.u().apply(sigma), vs = inst.v().apply(sigma);
  c.type1 = !is_subword(us, vs);
  const std::size_t n = sigma.size();
  auto fails = [&](WordView part) {
    return contains(inst.rp(), part) && !is_subword(inst.u().apply(part), inst.v().apply(part));
  };
  for (std::size_t i = 0; i <= n && !c.type2; ++i) {
    bool bad = false;
    switch (inst.variant()) {
      case Variant::plain: break;
      case Variant::codir_partial: bad = fails(sigma.subspan(i)); break;
      case Variant::dir_partial: bad = fails(sigma.first(i)); break;
      case Variant::co_and_dir: bad = fails(sigma.first(i)) || fails(sigma.subspan(i)); break;
    }
    if (bad) {
      c.type2 = true;
      c.split = i;
    }
  }
  return c;
}

}  // namespace pep
