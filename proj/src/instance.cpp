#include "pep/instance.hpp"

#include <algorithm>
#include <stdexcept>

#include "pep/errors.hpp"

namespace pep {

// ---------------------------------------------------------------------------
// Morphism

Morphism::Morphism(AlphabetPtr source, AlphabetPtr target, std::vector<Word> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (!source_ || !target_) throw PreconditionError("morphism needs source and target alphabets");
  if (images_.size() != source_->size())
    throw PreconditionError("morphism must give an image for every source letter");
  for (const auto& img : images_) {
    target_->check(img);
    expansion_ = std::max(expansion_, img.size());
  }
}

Word Morphism::apply(WordView w) const {
  source_->check(w);
  Word out;
  for (Symbol a : w) out.insert(out.end(), images_[a].begin(), images_[a].end());
  return out;
}

std::size_t Morphism::image_length(WordView w) const {
  std::size_t n = 0;
  for (Symbol a : w) n += images_.at(a).size();
  return n;
}

Morphism Morphism::mirrored() const {
  std::vector<Word> imgs;
  imgs.reserve(images_.size());
  for (const auto& img : images_) imgs.push_back(mirror(img));
  return Morphism(source_, target_, std::move(imgs));
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::dir_partial: return "dir";
    case Variant::codir_partial: return "codir";
    case Variant::co_and_dir: return "coanddir";
  }
  return "plain";
}

Variant parse_variant(std::string_view text) {
  if (text == "plain") return Variant::plain;
  if (text == "dir") return Variant::dir_partial;
  if (text == "codir") return Variant::codir_partial;
  if (text == "coanddir") return Variant::co_and_dir;
  throw ParseError("unknown variant '" + std::string(text) + "'", 0, 0);
}

// ---------------------------------------------------------------------------
// Constraints

Language Language::from_regex(Regex r, const AlphabetPtr& alphabet) {
  Dfa d = compile(to_nfa(r, alphabet));
  return Language{std::move(d), std::move(r)};
}

Language Language::from_dfa(Dfa d) { return Language{minimize(d), std::nullopt}; }

LengthDiffPredicate LengthDiffPredicate::from(const Morphism& u, const Morphism& v, Symbol start,
                                              Symbol split) {
  LengthDiffPredicate p;
  p.start_marker = start;
  p.split_marker = split;
  for (Symbol a = 0; a < u.source()->size(); ++a)
    p.delta.push_back(static_cast<long>(u.image(a).size()) - static_cast<long>(v.image(a).size()));
  return p;
}

bool LengthDiffPredicate::contains(WordView w) const {
  long diff = 0;
  int splits = 0;
  for (Symbol a : w) {
    if (a == start_marker) return false;
    if (a == split_marker) {
      if (++splits > 1) return false;
      continue;
    }
    diff += delta.at(a);
  }
  return splits == 1 && diff != 0;
}

bool contains(const SideConstraint& c, WordView w) {
  if (const auto* lang = std::get_if<Language>(&c)) return lang->dfa.accepts(w);
  return std::get<LengthDiffPredicate>(c).contains(w);
}

// ---------------------------------------------------------------------------
// PepInstance

PepInstance::PepInstance(Variant variant, Morphism u, Morphism v, Language r, SideConstraint rp)
    : variant_(variant), u_(std::move(u)), v_(std::move(v)), r_(std::move(r)), rp_(std::move(rp)) {
  require_same(*u_.source(), *v_.source(), "instance morphism sources");
  require_same(*u_.target(), *v_.target(), "instance morphism targets");
  require_same(*r_.dfa.alphabet(), *u_.source(), "R");
  if (auto* lang = std::get_if<Language>(&rp_)) {
    require_same(*lang->dfa.alphabet(), *u_.source(), "R'");
  } else {
    const auto& p = std::get<LengthDiffPredicate>(rp_);
    if (p.delta.size() != u_.source()->size() || p.start_marker >= p.delta.size() ||
        p.split_marker >= p.delta.size())
      throw AlphabetMismatch("R' predicate does not match the source alphabet");
    if (variant_ != Variant::codir_partial && variant_ != Variant::dir_partial)
      throw PreconditionError("the length-difference R' only applies to partial variants");
  }
  // Plain ignores R′ (R′ = ∅); co&dir constrains every split (R′ = Σ*).
  if (variant_ == Variant::plain)
    rp_ = Language{empty_dfa(u_.source()), Regex::empty()};
  else if (variant_ == Variant::co_and_dir) {
    std::vector<Symbol> all(u_.source()->size());
    for (Symbol a = 0; a < all.size(); ++a) all[a] = a;
    rp_ = Language{universal_dfa(u_.source()), Regex::star(Regex::any_of(all))};
  }
}

const Dfa& PepInstance::rp_dfa() const {
  if (const auto* lang = std::get_if<Language>(&rp_)) return lang->dfa;
  throw PreconditionError("R' is not regular");
}

// ---------------------------------------------------------------------------
// check_solution

Verdict check_solution(const PepInstance& inst, WordView sigma) {
  inst.sigma()->check(sigma);
  Verdict verdict;
  if (!inst.r().dfa.accepts(sigma)) {
    verdict.kind = Verdict::Kind::fails_membership;
    return verdict;
  }
  const std::size_t n = sigma.size();
  std::vector<std::size_t> uo(n + 1, 0), vo(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    uo[i + 1] = uo[i] + inst.u().image(sigma[i]).size();
    vo[i + 1] = vo[i] + inst.v().image(sigma[i]).size();
  }
  const Word uw = inst.u().apply(sigma), vw = inst.v().apply(sigma);
  WordView us(uw), vs(vw);
  auto prefix_ok = [&](std::size_t i) { return is_subword(us.first(uo[i]), vs.first(vo[i])); };
  auto suffix_ok = [&](std::size_t i) { return is_subword(us.subspan(uo[i]), vs.subspan(vo[i])); };
  auto fail = [&](Verdict::Side side, std::size_t i) {
    verdict.kind = Verdict::Kind::fails_embedding;
    verdict.side = side;
    verdict.split = i;
    return verdict;
  };

  switch (inst.variant()) {
    case Variant::plain:
      if (!suffix_ok(0)) return fail(Verdict::Side::whole, 0);
      return verdict;
    case Variant::dir_partial:
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == n) {
          if (!prefix_ok(n)) return fail(Verdict::Side::whole, n);
        } else if (contains(inst.rp(), sigma.first(i)) && !prefix_ok(i)) {
          return fail(Verdict::Side::prefix, i);
        }
      }
      return verdict;
    case Variant::codir_partial:
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == 0) {
          if (!suffix_ok(0)) return fail(Verdict::Side::whole, 0);
        } else if (contains(inst.rp(), sigma.subspan(i)) && !suffix_ok(i)) {
          return fail(Verdict::Side::suffix, i);
        }
      }
      return verdict;
    case Variant::co_and_dir:
      for (std::size_t i = 0; i <= n; ++i) {
        if (!prefix_ok(i)) return fail(Verdict::Side::prefix, i);
        if (!suffix_ok(i)) return fail(Verdict::Side::suffix, i);
      }
      return verdict;
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Mirroring

namespace {

Language mirror_language_of(const Language& l) {
  Dfa d = compile(mirror_language(l.dfa.to_nfa()));
  std::optional<Regex> r;
  if (l.regex) r = mirror(*l.regex);
  return Language{std::move(d), std::move(r)};
}

}  // namespace

PepInstance mirror_instance(const PepInstance& inst) {
  Variant v = inst.variant();
  if (v == Variant::dir_partial) v = Variant::codir_partial;
  else if (v == Variant::codir_partial) v = Variant::dir_partial;
  SideConstraint rp = inst.rp();
  if (auto* lang = std::get_if<Language>(&rp)) rp = mirror_language_of(*lang);
  // The length-difference predicate only depends on letter counts and marker
  // occurrences, so it is its own mirror.
  return PepInstance(v, inst.u().mirrored(), inst.v().mirrored(), mirror_language_of(inst.r()),
                     std::move(rp));
}

// ---------------------------------------------------------------------------
// ColoredSolution

ColoredSolution::ColoredSolution(std::shared_ptr<const PepInstance> oriented, Word oriented_word,
                                 bool mirrored)
    : inst_(std::move(oriented)), word_(std::move(oriented_word)), mirrored_(mirrored) {
  if (inst_->variant() == Variant::co_and_dir || inst_->variant() == Variant::dir_partial)
    throw PreconditionError("colouring needs a plain or codirect orientation");
  inst_->sigma()->check(word_);
  const std::size_t n = word_.size();
  u_off_.assign(n + 1, 0);
  v_off_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    u_off_[i + 1] = u_off_[i] + inst_->u().image(word_[i]).size();
    v_off_[i + 1] = v_off_[i] + inst_->v().image(word_[i]).size();
  }
  u_all_ = inst_->u().apply(word_);
  v_all_ = inst_->v().apply(word_);
  blue_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) blue_[i] = is_subword(u_range(i, n), v_range(i, n));

  if (is_regular(inst_->rp())) {
    const Dfa* automata[] = {&inst_->r().dfa, &inst_->rp_dfa()};
    suffix_sig_.resize(n + 1);
    suffix_sig_[n].parts = {identity_transformation(automata[0]->state_count()),
                            identity_transformation(automata[1]->state_count())};
    for (std::size_t i = n; i-- > 0;) {
      Symbol letter[] = {word_[i]};
      auto step = signature(automata, letter);
      for (std::size_t p = 0; p < 2; ++p)
        step.parts[p] = compose(step.parts[p], suffix_sig_[i + 1].parts[p]);
      suffix_sig_[i] = std::move(step);
    }
  }
  l_.resize(n + 1);
  r_.resize(n + 1);
  s_.resize(n + 1);
  t_.resize(n + 1);
}

std::vector<std::size_t> ColoredSolution::blue_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < blue_.size(); ++i)
    if (blue_[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> ColoredSolution::red_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < blue_.size(); ++i)
    if (!blue_[i]) out.push_back(i);
  return out;
}

WordView ColoredSolution::u_range(std::size_t i, std::size_t j) const {
  return WordView(u_all_).subspan(u_off_.at(i), u_off_.at(j) - u_off_.at(i));
}

WordView ColoredSolution::v_range(std::size_t i, std::size_t j) const {
  return WordView(v_all_).subspan(v_off_.at(i), v_off_.at(j) - v_off_.at(i));
}

void ColoredSolution::require(std::size_t i, Color c, const char* what) const {
  if (i > length()) throw PreconditionError(std::string(what) + ": index out of range");
  if (color(i) != c)
    throw PreconditionError(std::string(what) + ": index " + std::to_string(i) + " is " +
                            (c == Color::blue ? "red" : "blue"));
}

const Word& ColoredSolution::left_margin_u(std::size_t i) const {
  require(i, Color::blue, "left margin l");
  std::lock_guard lock(memo_mutex_);
  if (!l_[i]) {
    const std::size_t n = length();
    l_[i] = longest_suffix_carrier(u_range(0, i), u_range(i, n), v_range(i, n));
  }
  return *l_[i];
}

const Word& ColoredSolution::right_margin_u(std::size_t i) const {
  require(i, Color::red, "right margin r");
  std::lock_guard lock(memo_mutex_);
  if (!r_[i]) {
    const std::size_t n = length();
    r_[i] = shortest_prefix_overflow(u_range(i, n), v_range(i, n));
  }
  return *r_[i];
}

const Word& ColoredSolution::right_margin_v(std::size_t i) const {
  require(i, Color::blue, "right margin s");
  std::lock_guard lock(memo_mutex_);
  if (!s_[i]) {
    const std::size_t n = length();
    s_[i] = longest_prefix_host(u_range(i, n), v_range(i, n));
  }
  return *s_[i];
}

const std::optional<Word>& ColoredSolution::left_margin_v(std::size_t i) const {
  require(i, Color::red, "left margin t");
  std::lock_guard lock(memo_mutex_);
  if (!t_[i]) {
    const std::size_t n = length();
    if (is_subword(u_range(i, n), v_range(0, n)))
      t_[i] = std::optional<Word>(shortest_suffix_host(u_range(i, n), v_range(0, i), v_range(i, n)));
    else
      t_[i] = std::optional<Word>();
  }
  return *t_[i];
}

bool ColoredSolution::congruent(std::size_t i, std::size_t j) const {
  if (!has_congruence()) throw PreconditionError("index congruence needs a regular R'");
  return suffix_sig_.at(i) == suffix_sig_.at(j);
}

ColoredSolution color_indices(const PepInstance& inst, WordView sigma) {
  if (inst.variant() == Variant::co_and_dir)
    throw PreconditionError("co&dir instances have no colouring");
  const bool flip = inst.variant() == Variant::dir_partial;
  return ColoredSolution(std::make_shared<const PepInstance>(flip ? mirror_instance(inst) : inst),
                         flip ? mirror(sigma) : Word(sigma.begin(), sigma.end()), flip);
}

bool congruent(const PepInstance& inst, WordView sigma, std::size_t i, std::size_t j) {
  auto colored = color_indices(inst, sigma);
  const std::size_t n = sigma.size();
  if (i > n || j > n) throw PreconditionError("congruent: index out of range");
  if (colored.mirrored()) return colored.congruent(n - i, n - j);
  return colored.congruent(i, j);
}

// ---------------------------------------------------------------------------
// Cutting and pumping

namespace {

Word reorient(const ColoredSolution& c, Word w) { return c.mirrored() ? mirror(w) : w; }

void require_pair(const ColoredSolution& c, std::size_t a, std::size_t b, const char* op) {
  const std::string name(op);
  if (!check_solution(c.instance(), c.word()).ok())
    throw PreconditionError(name + ": the word is not a solution");
  if (!(a < b)) throw PreconditionError(name + ": requires a < b");
  if (b > c.length()) throw PreconditionError(name + ": index out of range");
  if (!c.congruent(a, b)) throw PreconditionError(name + ": indices are not congruent");
  if (c.color(a) != c.color(b)) throw PreconditionError(name + ": indices have different colours");
}

bool cut_margin_ok(const ColoredSolution& c, std::size_t a, std::size_t b) {
  if (c.is_blue(a)) return is_subword(c.left_margin_u(a), c.left_margin_u(b));
  return is_subword(c.right_margin_u(b), c.right_margin_u(a));
}

bool pump_margin_ok(const ColoredSolution& c, std::size_t a, std::size_t b) {
  if (c.is_blue(a)) return is_subword(c.right_margin_v(b), c.right_margin_v(a));
  const auto& ta = c.left_margin_v(a);
  const auto& tb = c.left_margin_v(b);
  return ta && tb && is_subword(*ta, *tb);
}

Word pumped(const Word& w, std::size_t a, std::size_t b, std::size_t k) {
  WordView v(w);
  return concat(v.first(a), power(v.subspan(a, b - a), k), v.subspan(b));
}

}  // namespace

Word cut(const ColoredSolution& c, std::size_t a, std::size_t b) {
  require_pair(c, a, b, "cut");
  if (!cut_margin_ok(c, a, b))
    throw PreconditionError(c.is_blue(a) ? "cut: l_a is not a subword of l_b"
                                         : "cut: r_b is not a subword of r_a");
  WordView w(c.word());
  Word shorter = concat(w.first(a), w.subspan(b));
  if (!check_solution(c.instance(), shorter).ok())
    throw std::logic_error("cut produced a non-solution");
  return reorient(c, std::move(shorter));
}

Word pump(const ColoredSolution& c, std::size_t a, std::size_t b, std::size_t k) {
  if (k == 0) throw PreconditionError("pump: k must be at least 1");
  require_pair(c, a, b, "pump");
  if (!c.is_blue(a) && (!c.left_margin_v(a) || !c.left_margin_v(b)))
    throw PreconditionError("pump: left margin t is undefined");
  if (!pump_margin_ok(c, a, b))
    throw PreconditionError(c.is_blue(a) ? "pump: s_b is not a subword of s_a"
                                         : "pump: t_a is not a subword of t_b");
  Word longer = pumped(c.word(), a, b, k);
  if (!check_solution(c.instance(), longer).ok())
    throw std::logic_error("pump produced a non-solution");
  return reorient(c, std::move(longer));
}

Word pump(const PepInstance& inst, const PumpCertificate& cert, std::size_t k) {
  auto colored = color_indices(inst, cert.sigma);
  return pump(colored, cert.a, cert.b, k);
}

namespace {

template <class Accept>
std::optional<std::pair<std::size_t, std::size_t>> scan_pairs(const ColoredSolution& c, Accept accept) {
  if (!c.has_congruence()) throw PreconditionError("pair search needs a regular R'");
  if (!check_solution(c.instance(), c.word()).ok())
    throw PreconditionError("pair search: the word is not a solution");
  for (auto indices : {c.blue_indices(), c.red_indices()}) {
    for (std::size_t bi = 1; bi < indices.size(); ++bi)
      for (std::size_t ai = bi; ai-- > 0;) {
        std::size_t a = indices[ai], b = indices[bi];
        if (c.congruent(a, b) && accept(a, b)) return std::pair{a, b};
      }
  }
  return std::nullopt;
}

}  // namespace

std::optional<CutCertificate> find_cut_pair(const ColoredSolution& c) {
  auto pair = scan_pairs(c, [&](std::size_t a, std::size_t b) { return cut_margin_ok(c, a, b); });
  if (!pair) return std::nullopt;
  auto [a, b] = *pair;
  CutCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.color = c.color(a);
  cert.mirrored = c.mirrored();
  if (cert.color == Color::blue) {
    cert.margin_a = c.left_margin_u(a);
    cert.margin_b = c.left_margin_u(b);
  } else {
    cert.margin_a = c.right_margin_u(a);
    cert.margin_b = c.right_margin_u(b);
  }
  return cert;
}

std::optional<PumpCertificate> find_pump_pair(const ColoredSolution& c) {
  auto pair = scan_pairs(c, [&](std::size_t a, std::size_t b) { return pump_margin_ok(c, a, b); });
  if (!pair) return std::nullopt;
  auto [a, b] = *pair;
  PumpCertificate cert;
  cert.sigma = c.original_word();
  cert.a = a;
  cert.b = b;
  cert.color = c.color(a);
  cert.mirrored = c.mirrored();
  if (cert.color == Color::blue) {
    cert.margin_a = c.right_margin_v(a);
    cert.margin_b = c.right_margin_v(b);
  } else {
    cert.margin_a = *c.left_margin_v(a);
    cert.margin_b = *c.left_margin_v(b);
  }
  return cert;
}

Word minimize_solution(const PepInstance& inst, WordView sigma) {
  if (!check_solution(inst, sigma).ok())
    throw PreconditionError("minimize: the word is not a solution");
  Word cur(sigma.begin(), sigma.end());
  for (;;) {
    auto colored = color_indices(inst, cur);
    auto cert = find_cut_pair(colored);
    if (!cert) return cur;
    cur = cut(colored, cert->a, cert->b);
  }
}

}  // namespace pep
