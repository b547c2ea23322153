#include "monel/decision.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "monel/counting.hpp"
#include "monel/elimination.hpp"
#include "monel/error.hpp"

namespace monel {

namespace {

Formula tv(bool b) { return b ? mk_true() : mk_false(); }

std::vector<Formula> members(const Formula& f, Kind k) {
  if (f.kind() == k) return f.kids();
  return {f};
}

template <class Fn>
Formula map_children(const Formula& f, Fn&& fn) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Eq:
      return f;
    case Kind::Not:
      return mk_not(fn(f.child(0)));
    case Kind::And:
    case Kind::Or: {
      Formulas ks;
      ks.reserve(f.num_children());
      for (const Formula& k : f.kids()) ks.push_back(fn(k));
      return f.kind() == Kind::And ? mk_and(std::move(ks))
                                   : mk_or(std::move(ks));
    }
    case Kind::Forall:
      return mk_forall(f.name(), fn(f.child(0)));
    case Kind::Exists:
      return mk_exists(f.name(), fn(f.child(0)));
    case Kind::AtLeast:
      return mk_atleast(f.count(), f.name(), fn(f.child(0)));
    case Kind::AllBut:
      return mk_allbut(f.count(), f.name(), fn(f.child(0)));
    case Kind::ForallPred:
      return mk_forall_pred(f.name(), f.pred_arity(), fn(f.child(0)));
    case Kind::ExistsPred:
      return mk_exists_pred(f.name(), f.pred_arity(), fn(f.child(0)));
  }
  throw Error(ErrorCode::Internal, "map_children: unknown node kind");
}

// ---------------------------------------------------------------------------
// Pure counting formulas
// ---------------------------------------------------------------------------

int max_mentioned_count(const Formula& f) {
  int m = 0;
  if (is_counting(f.kind())) m = f.count();
  for (const Formula& k : f.kids()) m = std::max(m, max_mentioned_count(k));
  return m;
}

// Cardinality interval a conjunctive clause of counting literals is true on.
struct CardInterval {
  int lo = 1;
  int hi = -1;  // -1: no upper limit
};

}  // namespace

bool is_pure_counting(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Not:
      return is_pure_counting(f.child(0));
    case Kind::And:
    case Kind::Or:
      for (const Formula& k : f.kids())
        if (!is_pure_counting(k)) return false;
      return true;
    case Kind::AtLeast:
      return f.child(0).kind() == Kind::True;
    default:
      return false;
  }
}

bool CardinalitySpectrum::truth(int n) const {
  bool exceptional =
      std::find(exceptions.begin(), exceptions.end(), n) != exceptions.end();
  return (sign == SpectrumSign::TrueCofinitely) != exceptional;
}

bool CardinalitySpectrum::all_true() const {
  return sign == SpectrumSign::TrueCofinitely && exceptions.empty();
}

bool CardinalitySpectrum::any_true() const {
  return sign == SpectrumSign::TrueCofinitely || !exceptions.empty();
}

std::string to_text(const CardinalitySpectrum& s) {
  std::ostringstream os;
  os << (s.sign == SpectrumSign::TrueCofinitely ? "true" : "false")
     << " for all domain cardinalities";
  if (!s.exceptions.empty()) {
    os << " with exception of ";
    for (std::size_t i = 0; i < s.exceptions.size(); ++i) {
      if (i) os << ", ";
      os << s.exceptions[i];
    }
  }
  return os.str();
}

CardinalitySpectrum decide_pure_counting(const Formula& f) {
  if (!is_pure_counting(f))
    throw Error(ErrorCode::Shape,
                "decide-pure-counting: formula is not a Boolean combination "
                "of counting literals over verum");
  RewriteContext ctx;
  Formula d = to_dnf_over_basics(
      f,
      [](const Formula& g) {
        return g.kind() == Kind::True || g.kind() == Kind::False ||
               g.kind() == Kind::AtLeast;
      },
      &ctx);

  std::vector<CardInterval> intervals;
  bool constant_true = d.kind() == Kind::True;
  if (!constant_true && d.kind() != Kind::False) {
    for (const Formula& clause : members(d, Kind::Or)) {
      CardInterval iv;
      bool dead = false;
      for (const Formula& lit : members(clause, Kind::And)) {
        switch (lit.kind()) {
          case Kind::True:
            break;
          case Kind::False:
            dead = true;
            break;
          case Kind::AtLeast:
            iv.lo = std::max(iv.lo, lit.count());
            break;
          case Kind::Not: {
            const Formula& b = lit.child(0);
            if (b.kind() == Kind::True) {
              dead = true;
            } else if (b.kind() == Kind::False) {
              // vacuous
            } else {
              int u = b.count() - 1;
              iv.hi = iv.hi < 0 ? u : std::min(iv.hi, u);
            }
            break;
          }
          default:
            throw Error(ErrorCode::Internal,
                        "decide-pure-counting: unexpected clause literal");
        }
      }
      if (dead) continue;
      if (iv.hi >= 0 && iv.lo > iv.hi) continue;  // empty number series
      intervals.push_back(iv);
    }
  }

  auto member = [&](int n) {
    if (constant_true) return true;
    for (const CardInterval& iv : intervals)
      if (n >= iv.lo && (iv.hi < 0 || n <= iv.hi)) return true;
    return false;
  };
  bool tail = constant_true;
  for (const CardInterval& iv : intervals)
    if (iv.hi < 0) tail = true;

  CardinalitySpectrum s;
  s.sign = tail ? SpectrumSign::TrueCofinitely : SpectrumSign::FalseCofinitely;
  // Beyond the largest mentioned count every literal is true, so the value
  // is constant there; only smaller cardinalities can be exceptional.
  int horizon = max_mentioned_count(f);
  for (int n = 1; n <= horizon; ++n)
    if (member(n) != tail) s.exceptions.push_back(n);
  return s;
}

// ---------------------------------------------------------------------------
// Validity and satisfiability via elimination
// ---------------------------------------------------------------------------

namespace {

Formula close_with(const Formula& f, bool universal) {
  FreeSymbols fs = free_symbols(f);
  FreshNames names(f);
  Formula g = f;
  // Innermost group: constants, renamed to fresh variables. Reverse name
  // order so that within each group the alphabetically first symbol ends up
  // outermost.
  std::vector<std::string> consts(fs.consts.begin(), fs.consts.end());
  for (auto it = consts.rbegin(); it != consts.rend(); ++it) {
    std::string v = names.fresh(*it);
    g = replace_term(g, Term::konst(*it), Term::var(v));
    g = universal ? mk_forall(v, std::move(g)) : mk_exists(v, std::move(g));
  }
  std::vector<std::string> vars(fs.vars.begin(), fs.vars.end());
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    g = universal ? mk_forall(*it, std::move(g)) : mk_exists(*it, std::move(g));
  std::vector<std::pair<std::string, int>> preds(fs.preds.begin(),
                                                 fs.preds.end());
  for (auto it = preds.rbegin(); it != preds.rend(); ++it)
    g = universal ? mk_forall_pred(it->first, it->second, std::move(g))
                  : mk_exists_pred(it->first, it->second, std::move(g));
  return g;
}

struct PipelineRun {
  CardinalitySpectrum spectrum;
  Trace trace;
};

PipelineRun run_closed(const Formula& closed, bool with_trace) {
  Formula eliminated = eliminate_all(closed);
  PipelineRun run;
  RewriteContext ctx;
  if (with_trace) ctx.trace = &run.trace;
  Formula normalized = counting_normal_form(eliminated, GuardMode::Conj, &ctx);
  run.spectrum = decide_pure_counting(normalized);
  return run;
}

// Shared body of the three spectrum-based deciders. The valid field always
// comes from the universal closure and the satisfiable field from the
// existential one; `spectrum_from_existential` picks which of the two runs
// supplies witness_spectrum and the trace.
Verdict decide_closures(const Formula& f, bool spectrum_from_existential,
                        bool with_trace) {
  FreeSymbols fs = free_symbols(f);
  bool closed = fs.vars.empty() && fs.consts.empty() && fs.preds.empty();

  Verdict v;
  if (closed) {
    PipelineRun run = run_closed(f, with_trace);
    v.valid = run.spectrum.all_true();
    v.satisfiable = run.spectrum.any_true();
    v.witness_spectrum = run.spectrum;
    if (with_trace) v.trace = std::move(run.trace);
    return v;
  }

  bool trace_univ = with_trace && !spectrum_from_existential;
  bool trace_exis = with_trace && spectrum_from_existential;
  PipelineRun univ = run_closed(close_with(f, /*universal=*/true), trace_univ);
  PipelineRun exis = run_closed(close_with(f, /*universal=*/false), trace_exis);
  v.valid = univ.spectrum.all_true();
  v.satisfiable = exis.spectrum.any_true();
  v.witness_spectrum =
      spectrum_from_existential ? exis.spectrum : univ.spectrum;
  if (with_trace)
    v.trace = std::move(spectrum_from_existential ? exis.trace : univ.trace);
  return v;
}

void require_class(const Formula& f, FormulaClass limit, const char* who) {
  FormulaClass c = classify(f);
  if (!class_leq(c, limit))
    throw Error(ErrorCode::Class, std::string(who) + ": formula class " +
                                      formula_class_name(c) + " exceeds " +
                                      formula_class_name(limit));
}

}  // namespace

Formula close_universally(const Formula& f) { return close_with(f, true); }
Formula close_existentially(const Formula& f) { return close_with(f, false); }

Verdict decide_validity(const Formula& f, bool with_trace) {
  require_class(f, FormulaClass::QMON_EQ, "decide-validity");
  return decide_closures(f, /*spectrum_from_existential=*/false, with_trace);
}

Verdict decide_satisfiability(const Formula& f, bool with_trace) {
  require_class(f, FormulaClass::QMON_EQ, "decide-satisfiability");
  return decide_closures(f, /*spectrum_from_existential=*/true, with_trace);
}

// ---------------------------------------------------------------------------
// Propositional deciders
// ---------------------------------------------------------------------------

namespace {

void require_boolean(const Formula& f, const char* who) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Atom:
      if (!f.args().empty())
        throw Error(ErrorCode::Class, std::string(who) + ": predicate '" +
                                          f.name() + "' is not nullary");
      return;
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
      for (const Formula& k : f.kids()) require_boolean(k, who);
      return;
    case Kind::ForallPred:
    case Kind::ExistsPred:
      if (f.pred_arity() != 0)
        throw Error(ErrorCode::Class, std::string(who) +
                                          ": quantified predicate '" +
                                          f.name() + "' is not nullary");
      require_boolean(f.child(0), who);
      return;
    default:
      throw Error(ErrorCode::Class,
                  std::string(who) +
                      ": only Boolean structure over nullary predicates "
                      "and predicate quantifiers is supported");
  }
}

bool eval_boolean(const Formula& f, std::map<std::string, bool>& env) {
  switch (f.kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Atom:
      return env.at(f.name());
    case Kind::Not:
      return !eval_boolean(f.child(0), env);
    case Kind::And:
      for (const Formula& k : f.kids())
        if (!eval_boolean(k, env)) return false;
      return true;
    case Kind::Or:
      for (const Formula& k : f.kids())
        if (eval_boolean(k, env)) return true;
      return false;
    case Kind::ExistsPred:
    case Kind::ForallPred: {
      auto it = env.find(f.name());
      std::optional<bool> saved;
      if (it != env.end()) saved = it->second;
      env[f.name()] = true;
      bool on_true = eval_boolean(f.child(0), env);
      env[f.name()] = false;
      bool on_false = eval_boolean(f.child(0), env);
      if (saved)
        env[f.name()] = *saved;
      else
        env.erase(f.name());
      return f.kind() == Kind::ExistsPred ? (on_true || on_false)
                                          : (on_true && on_false);
    }
    default:
      throw Error(ErrorCode::Internal, "eval_boolean: non-Boolean node");
  }
}

bool is_nullary_basic(const Formula& g) {
  return g.kind() == Kind::True || g.kind() == Kind::False ||
         (g.kind() == Kind::Atom && g.args().empty());
}

// Splits a normal-form clause into the literals of predicate p and the rest.
// Returns +1 / -1 / 0 for the polarity found; a clause carrying both
// polarities reports via `both`.
int split_clause(const Formulas& lits, const std::string& p, Formulas& rest,
                 bool& both) {
  bool pos = false, neg = false;
  for (const Formula& lit : lits) {
    if (lit.kind() == Kind::Atom && lit.name() == p) {
      pos = true;
    } else if (lit.kind() == Kind::Not && lit.child(0).kind() == Kind::Atom &&
               lit.child(0).name() == p) {
      neg = true;
    } else {
      rest.push_back(lit);
    }
  }
  both = pos && neg;
  return pos ? 1 : (neg ? -1 : 0);
}

// Removes the predicate quantifiers of a quantified Boolean formula by the
// two normal forms, innermost first: an existential quantifier distributes
// over the disjunctive normal form of its body and vanishes by dropping its
// literal from each conjunctive clause (a clause with both polarities is
// contradictory and falls away); a universal quantifier works dually on the
// conjunctive normal form.
Formula qbf_by_normal_forms(const Formula& f, RewriteContext* ctx) {
  if (f.kind() != Kind::ExistsPred && f.kind() != Kind::ForallPred)
    return map_children(
        f, [&](const Formula& k) { return qbf_by_normal_forms(k, ctx); });

  bool existential = f.kind() == Kind::ExistsPred;
  Formula body = qbf_by_normal_forms(f.child(0), ctx);
  Formula nf = existential ? to_dnf_over_basics(body, is_nullary_basic, ctx)
                           : to_cnf_over_basics(body, is_nullary_basic, ctx);
  if (nf.kind() == Kind::True || nf.kind() == Kind::False) return nf;

  Kind outer = existential ? Kind::Or : Kind::And;
  Kind inner = existential ? Kind::And : Kind::Or;
  Formulas out;
  for (const Formula& clause : members(nf, outer)) {
    Formulas rest;
    bool both = false;
    split_clause(members(clause, inner), f.name(), rest, both);
    if (both) {
      // exists2 p over p & ~p & K is falsum; forall2 p over p | ~p | K is
      // verum: either way the clause leaves no constraint behind.
      continue;
    }
    out.push_back(existential ? mk_and(std::move(rest))
                              : mk_or(std::move(rest)));
  }
  Formula joined = existential ? mk_or(std::move(out)) : mk_and(std::move(out));
  return simplify_truth_values(joined);
}

bool cnf_reports_valid(const Formula& g, RewriteContext* ctx) {
  Formula c = to_cnf_over_basics(g, is_nullary_basic, ctx);
  if (c.kind() == Kind::True) return true;
  if (c.kind() == Kind::False) return false;
  for (const Formula& clause : members(c, Kind::And)) {
    std::set<std::string> pos, neg;
    bool tautological = false;
    for (const Formula& lit : members(clause, Kind::Or)) {
      if (lit.kind() == Kind::True) tautological = true;
      if (lit.kind() == Kind::Atom) pos.insert(lit.name());
      if (lit.kind() == Kind::Not && lit.child(0).kind() == Kind::False)
        tautological = true;
      if (lit.kind() == Kind::Not && lit.child(0).kind() == Kind::Atom)
        neg.insert(lit.child(0).name());
    }
    for (const std::string& n : neg)
      if (pos.count(n)) tautological = true;
    if (!tautological) return false;
  }
  return true;
}

bool dnf_reports_satisfiable(const Formula& g, RewriteContext* ctx) {
  Formula d = to_dnf_over_basics(g, is_nullary_basic, ctx);
  if (d.kind() == Kind::True) return true;
  if (d.kind() == Kind::False) return false;
  for (const Formula& clause : members(d, Kind::Or)) {
    std::set<std::string> pos, neg;
    bool contradictory = false;
    for (const Formula& lit : members(clause, Kind::And)) {
      if (lit.kind() == Kind::False) contradictory = true;
      if (lit.kind() == Kind::Atom) pos.insert(lit.name());
      if (lit.kind() == Kind::Not && lit.child(0).kind() == Kind::True)
        contradictory = true;
      if (lit.kind() == Kind::Not && lit.child(0).kind() == Kind::Atom)
        neg.insert(lit.child(0).name());
    }
    for (const std::string& n : neg)
      if (pos.count(n)) contradictory = true;
    if (!contradictory) return true;
  }
  return false;
}

}  // namespace

Verdict prop_decide_substitution(const Formula& f) {
  require_boolean(f, "substitution-decide");
  FreeSymbols fs = free_symbols(f);
  std::vector<std::string> frees;
  frees.reserve(fs.preds.size());
  for (const auto& [name, arity] : fs.preds) frees.push_back(name);
  if (frees.size() > 20)
    throw Error(ErrorCode::Budget,
                "substitution-decide: more than 20 free predicates");

  Verdict v;
  v.valid = true;
  v.satisfiable = false;
  std::map<std::string, bool> env;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << frees.size());
       ++mask) {
    for (std::size_t i = 0; i < frees.size(); ++i)
      env[frees[i]] = (mask >> i) & 1;
    bool value = eval_boolean(f, env);
    v.valid = v.valid && value;
    v.satisfiable = v.satisfiable || value;
  }
  return v;
}

Verdict prop_decide_cnf(const Formula& f) {
  require_boolean(f, "cnf-decide");
  RewriteContext ctx;
  Formula g = qbf_by_normal_forms(f, &ctx);
  Verdict v;
  v.valid = cnf_reports_valid(g, &ctx);
  v.satisfiable = !cnf_reports_valid(mk_not(g), &ctx);
  return v;
}

Verdict prop_decide_dnf(const Formula& f) {
  require_boolean(f, "dnf-decide");
  RewriteContext ctx;
  Formula g = qbf_by_normal_forms(f, &ctx);
  Verdict v;
  v.satisfiable = dnf_reports_satisfiable(g, &ctx);
  v.valid = !dnf_reports_satisfiable(mk_not(g), &ctx);
  return v;
}

// ---------------------------------------------------------------------------
// Quantified Boolean formulas by inward propagation
// ---------------------------------------------------------------------------

namespace {

// exists2 p. p  or  exists2 p. (~p)
bool is_unit_block(const Formula& g) {
  if (g.kind() != Kind::ExistsPred || g.pred_arity() != 0) return false;
  const Formula& b = g.child(0);
  if (b.kind() == Kind::Atom) return b.name() == g.name() && b.args().empty();
  return b.kind() == Kind::Not && b.child(0).kind() == Kind::Atom &&
         b.child(0).name() == g.name() && b.child(0).args().empty();
}

Formula foralls_to_exists(const Formula& f) {
  if (f.kind() == Kind::ForallPred)
    return mk_not(mk_exists_pred(f.name(), f.pred_arity(),
                                 mk_not(foralls_to_exists(f.child(0)))));
  return map_children(
      f, [](const Formula& k) { return foralls_to_exists(k); });
}

// Pushes every existential predicate quantifier inward until it stands
// directly upon its own literal: the body's disjunctive normal form (with
// completed inner unit blocks as opaque basics) lets the quantifier
// distribute, and each clause confines it to the unit block that carries its
// literal.
Formula qbf_inward(const Formula& f, RewriteContext* ctx) {
  if (f.kind() != Kind::ExistsPred)
    return map_children(f,
                        [&](const Formula& k) { return qbf_inward(k, ctx); });

  Formula body = qbf_inward(f.child(0), ctx);
  Formula d = to_dnf_over_basics(
      body,
      [](const Formula& g) { return is_nullary_basic(g) || is_unit_block(g); },
      ctx);
  if (d.kind() == Kind::True || d.kind() == Kind::False) return d;

  Formulas out;
  for (const Formula& clause : members(d, Kind::Or)) {
    Formulas rest;
    bool both = false;
    int sign = split_clause(members(clause, Kind::And), f.name(), rest, both);
    if (both) continue;  // contradictory clause: its disjunct is falsum
    if (sign == 0) {
      out.push_back(mk_and(std::move(rest)));  // vacuous quantification
    } else {
      Formula lit = sign > 0 ? mk_atom(f.name()) : mk_not(mk_atom(f.name()));
      rest.push_back(mk_exists_pred(f.name(), 0, std::move(lit)));
      out.push_back(mk_and(std::move(rest)));
    }
  }
  return mk_or(std::move(out));
}

Formula strip_unit_blocks(const Formula& f) {
  if (is_unit_block(f)) return mk_true();
  return map_children(
      f, [](const Formula& k) { return strip_unit_blocks(k); });
}

}  // namespace

Verdict qbf_decide_inward(const Formula& f) {
  require_boolean(f, "qbf-inward");
  FreeSymbols fs = free_symbols(f);
  if (!fs.preds.empty())
    throw Error(ErrorCode::Class, "qbf-inward: formula must be closed but '" +
                                      fs.preds.begin()->first +
                                      "' occurs free");
  RewriteContext ctx;
  Formula inward = qbf_inward(foralls_to_exists(f), &ctx);
  Formula value = simplify_truth_values(strip_unit_blocks(inward));
  if (value.kind() != Kind::True && value.kind() != Kind::False)
    throw Error(ErrorCode::Internal,
                "qbf-inward: residue after quantifier propagation");
  Verdict v;
  v.valid = value.kind() == Kind::True;
  v.satisfiable = v.valid;
  return v;
}

// ---------------------------------------------------------------------------
// Quine's expansion
// ---------------------------------------------------------------------------

namespace {

bool binder_captures(const Formula& node, const FreeSymbols& gs) {
  if (!is_quantifier(node.kind())) return false;
  if (is_individual_quantifier(node.kind())) return gs.vars.count(node.name());
  return gs.preds.count(node.name()) > 0;
}

void collect_free_occurrences(const Formula& node, const Formula& g,
                              const FreeSymbols& gs, Path& cur,
                              std::vector<Path>& out) {
  if (node == g) {
    out.push_back(cur);
    return;
  }
  if (binder_captures(node, gs)) return;
  for (std::size_t i = 0; i < node.num_children(); ++i) {
    cur.push_back(static_cast<int>(i));
    collect_free_occurrences(node.child(i), g, gs, cur, out);
    cur.pop_back();
  }
}

Formula replace_free_occurrences(const Formula& node, const Formula& g,
                                 const FreeSymbols& gs, const Formula& r) {
  if (node == g) return r;
  if (binder_captures(node, gs)) return node;
  return map_children(node, [&](const Formula& k) {
    return replace_free_occurrences(k, g, gs, r);
  });
}

// Within one connective, propagates each member as an assumption into its
// siblings: a conjunct holds there, a disjunct fails there. Runs one pass;
// the cleanup loop below iterates it with truth-value simplification.
Formula guard_pass(const Formula& f) {
  Formula h =
      map_children(f, [](const Formula& k) { return guard_pass(k); });
  if (h.kind() != Kind::And && h.kind() != Kind::Or) return h;
  bool conj = h.kind() == Kind::And;
  Formulas ms = h.kids();
  bool changed = false;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const Formula assumption = ms[i];
    if (assumption.kind() == Kind::True || assumption.kind() == Kind::False)
      continue;
    FreeSymbols as = free_symbols(assumption);
    Formula comp = complement(assumption);
    FreeSymbols cs = free_symbols(comp);
    for (std::size_t j = 0; j < ms.size(); ++j) {
      if (i == j) continue;
      Formula next = replace_free_occurrences(ms[j], assumption, as, tv(conj));
      next = replace_free_occurrences(next, comp, cs, tv(!conj));
      if (next != ms[j]) {
        ms[j] = std::move(next);
        changed = true;
      }
    }
  }
  if (!changed) return h;
  return conj ? mk_and(std::move(ms)) : mk_or(std::move(ms));
}

Formula expansion_cleanup(Formula f) {
  for (int round = 0; round < 100; ++round) {
    Formula next = simplify_truth_values(guard_pass(f));
    if (next == f) break;
    f = std::move(next);
  }
  return f;
}

// Leftmost maximal subformula of `body` without a free occurrence of x whose
// free symbols are not captured between the body root and the occurrence.
std::optional<Formula> find_expandable(const Formula& node,
                                       const std::string& x,
                                       std::set<std::string>& bound_vars,
                                       std::set<std::string>& bound_preds) {
  if (node.kind() != Kind::True && node.kind() != Kind::False &&
      !occurs_free_var(node, x)) {
    FreeSymbols fs = free_symbols(node);
    bool captured = false;
    for (const std::string& v : fs.vars)
      if (bound_vars.count(v)) captured = true;
    for (const auto& [p, arity] : fs.preds)
      if (bound_preds.count(p)) captured = true;
    if (!captured) return node;
    // A captured subtree may still contain smaller eligible parts.
  }
  bool pushed_var = false, pushed_pred = false;
  if (is_individual_quantifier(node.kind()) &&
      bound_vars.insert(node.name()).second)
    pushed_var = true;
  if (is_pred_quantifier(node.kind()) &&
      bound_preds.insert(node.name()).second)
    pushed_pred = true;
  std::optional<Formula> found;
  for (const Formula& k : node.kids()) {
    found = find_expandable(k, x, bound_vars, bound_preds);
    if (found) break;
  }
  if (pushed_var) bound_vars.erase(node.name());
  if (pushed_pred) bound_preds.erase(node.name());
  return found;
}

Formula quine_rec(const Formula& f) {
  Formula h = map_children(f, [](const Formula& k) { return quine_rec(k); });
  if (h.kind() != Kind::Forall && h.kind() != Kind::Exists) return h;
  std::set<std::string> bvars, bpreds;
  std::optional<Formula> g =
      find_expandable(h.child(0), h.name(), bvars, bpreds);
  if (!g) return h;
  Formula expanded = expansion_cleanup(quine_step(h, *g, h.name()));
  return quine_rec(expanded);
}

}  // namespace

Formula quine_step(const Formula& f, const Formula& g, const std::string& x) {
  if ((f.kind() != Kind::Forall && f.kind() != Kind::Exists) || f.name() != x)
    throw Error(ErrorCode::Shape,
                "quine-step: expected a plain quantifier binding '" + x + "'");
  if (occurs_free_var(g, x))
    throw Error(ErrorCode::Eligibility,
                "quine-step: the expanded subformula has a free occurrence "
                "of the quantified variable");
  const Formula& body = f.child(0);
  FreeSymbols gs = free_symbols(g);
  std::vector<Path> paths;
  Path cur;
  collect_free_occurrences(body, g, gs, cur, paths);
  if (paths.empty())
    throw Error(ErrorCode::Eligibility,
                "quine-step: the subformula has no free occurrence in the "
                "quantifier body");
  Formula on_true = body, on_false = body;
  for (const Path& p : paths) {
    on_true = replace_at(on_true, p, mk_true());
    on_false = replace_at(on_false, p, mk_false());
  }
  if (f.kind() == Kind::Exists)
    return mk_and({mk_or({g, mk_exists(x, std::move(on_false))}),
                   mk_or({complement(g), mk_exists(x, std::move(on_true))})});
  return mk_or({mk_and({g, mk_forall(x, std::move(on_true))}),
                mk_and({complement(g), mk_forall(x, std::move(on_false))})});
}

Formula quine_expand(const Formula& f) { return quine_rec(f); }

Verdict quine_decide(const Formula& f, bool with_trace) {
  require_class(f, FormulaClass::MON, "quine-decide");
  Formula expanded = quine_expand(f);
  return decide_closures(expanded, /*spectrum_from_existential=*/false,
                         with_trace);
}

}  // namespace monel
