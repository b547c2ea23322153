#include "monel/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace monel {

namespace {

struct EvalCtx {
  const Interpretation& base;
  std::map<std::string, int> bound_vars;
  std::map<std::string, PredExt> bound_preds;
};

int denote(const EvalCtx& c, const Term& t) {
  if (t.kind == TermKind::Var) {
    auto it = c.bound_vars.find(t.name);
    if (it != c.bound_vars.end()) return it->second;
    auto jt = c.base.vars.find(t.name);
    if (jt != c.base.vars.end()) return jt->second;
    throw Error(ErrorCode::MissingSymbol, "variable '" + t.name + "'");
  }
  auto it = c.base.consts.find(t.name);
  if (it != c.base.consts.end()) return it->second;
  throw Error(ErrorCode::MissingSymbol, "constant '" + t.name + "'");
}

const PredExt& pred_ext(const EvalCtx& c, const std::string& name) {
  auto it = c.bound_preds.find(name);
  if (it != c.bound_preds.end()) return it->second;
  auto jt = c.base.preds.find(name);
  if (jt != c.base.preds.end()) return jt->second;
  throw Error(ErrorCode::MissingSymbol, "predicate '" + name + "'");
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Cell index -> tuple, for enumerating extensions of a quantified predicate.
std::vector<int> cell_tuple(std::uint64_t idx, int arity, int n) {
  std::vector<int> t(static_cast<std::size_t>(arity));
  for (int i = arity - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<int>(idx % n);
    idx /= n;
  }
  return t;
}

bool eval(const Formula& f, EvalCtx& c);

int count_witnesses(const Formula& body, const std::string& var, EvalCtx& c,
                    bool negate, int stop_at) {
  int hits = 0;
  auto saved = c.bound_vars.find(var) != c.bound_vars.end()
                   ? std::optional<int>(c.bound_vars[var])
                   : std::nullopt;
  for (int e = 0; e < c.base.domain_size && hits < stop_at; ++e) {
    c.bound_vars[var] = e;
    bool v = eval(body, c);
    if (v != negate) ++hits;
  }
  if (saved)
    c.bound_vars[var] = *saved;
  else
    c.bound_vars.erase(var);
  return hits;
}

bool eval(const Formula& f, EvalCtx& c) {
  switch (f.kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: {
      const PredExt& ext = pred_ext(c, f.name());
      if (ext.arity != static_cast<int>(f.args().size()))
        throw Error(ErrorCode::Arity, "predicate '" + f.name() + "' applied to " +
                                          std::to_string(f.args().size()) +
                                          " arguments, extension has arity " +
                                          std::to_string(ext.arity));
      std::vector<int> tup;
      tup.reserve(f.args().size());
      for (const Term& t : f.args()) tup.push_back(denote(c, t));
      return ext.tuples.count(tup) > 0;
    }
    case Kind::Eq:
      return denote(c, f.args()[0]) == denote(c, f.args()[1]);
    case Kind::Not:
      return !eval(f.child(0), c);
    case Kind::And:
      for (const Formula& k : f.kids())
        if (!eval(k, c)) return false;
      return true;
    case Kind::Or:
      for (const Formula& k : f.kids())
        if (eval(k, c)) return true;
      return false;
    case Kind::Forall:
      return count_witnesses(f.child(0), f.name(), c, true, 1) == 0;
    case Kind::Exists:
      return count_witnesses(f.child(0), f.name(), c, false, 1) >= 1;
    case Kind::AtLeast:
      return count_witnesses(f.child(0), f.name(), c, false, f.count()) >= f.count();
    case Kind::AllBut:
      // all individuals but fewer than n: fewer than n elements falsify
      return count_witnesses(f.child(0), f.name(), c, true, f.count()) < f.count();
    case Kind::ForallPred:
    case Kind::ExistsPred: {
      std::uint64_t cells = ipow(static_cast<std::uint64_t>(c.base.domain_size),
                                 f.pred_arity());
      if (cells > 25)
        throw Error(ErrorCode::Budget,
                    "predicate quantifier enumeration over " +
                        std::to_string(cells) + " cells");
      bool exists = f.kind() == Kind::ExistsPred;
      auto saved = c.bound_preds.find(f.name()) != c.bound_preds.end()
                       ? std::optional<PredExt>(c.bound_preds[f.name()])
                       : std::nullopt;
      bool result = !exists;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
        PredExt ext;
        ext.arity = f.pred_arity();
        for (std::uint64_t bit = 0; bit < cells; ++bit)
          if (mask & (std::uint64_t{1} << bit))
            ext.tuples.insert(cell_tuple(bit, f.pred_arity(), c.base.domain_size));
        c.bound_preds[f.name()] = std::move(ext);
        bool v = eval(f.child(0), c);
        if (exists && v) { result = true; break; }
        if (!exists && !v) { result = false; break; }
      }
      if (saved)
        c.bound_preds[f.name()] = *saved;
      else
        c.bound_preds.erase(f.name());
      return result;
    }
  }
  throw Error(ErrorCode::Internal, "evaluate: unknown kind");
}

}  // namespace

bool evaluate(const Formula& f, const Interpretation& i) {
  if (i.domain_size < 1)
    throw Error(ErrorCode::BadArgs, "domains are nonempty: domain_size >= 1");
  EvalCtx c{i, {}, {}};
  return eval(f, c);
}

Signature signature_of(const std::vector<Formula>& fs) {
  Signature sig;
  for (const Formula& f : fs) {
    FreeSymbols fr = free_symbols(f);
    for (const auto& [name, arity] : fr.preds) {
      auto [pos, fresh] = sig.preds.emplace(name, arity);
      if (!fresh && pos->second != arity)
        throw Error(ErrorCode::Arity,
                    "predicate '" + name + "' used with arities " +
                        std::to_string(pos->second) + " and " +
                        std::to_string(arity));
    }
    sig.consts.insert(fr.consts.begin(), fr.consts.end());
    sig.vars.insert(fr.vars.begin(), fr.vars.end());
  }
  return sig;
}

namespace {

// Mixed-radix enumeration of all interpretations of a signature over one
// domain size. Digit order: predicates by name (most significant first),
// then constants, then free variables; the last digit steps fastest.
class Enumerator {
 public:
  Enumerator(const Signature& sig, int n) : sig_(sig), n_(n) {
    for (const auto& [name, arity] : sig.preds) {
      std::uint64_t cells = ipow(static_cast<std::uint64_t>(n), arity);
      if (cells > 62)
        throw Error(ErrorCode::Budget, "extension of '" + name + "' has " +
                                           std::to_string(cells) + " cells");
      radices_.push_back(std::uint64_t{1} << cells);
    }
    for (std::size_t k = 0; k < sig.consts.size() + sig.vars.size(); ++k)
      radices_.push_back(static_cast<std::uint64_t>(n));
    digits_.assign(radices_.size(), 0);
  }

  std::uint64_t total() const {
    std::uint64_t t = 1;
    for (std::uint64_t r : radices_) {
      if (r != 0 && t > UINT64_MAX / r) return UINT64_MAX;
      t *= r;
    }
    return t;
  }

  Interpretation current() const {
    Interpretation i;
    i.domain_size = n_;
    std::size_t d = 0;
    for (const auto& [name, arity] : sig_.preds) {
      PredExt ext;
      ext.arity = arity;
      std::uint64_t mask = digits_[d++];
      std::uint64_t cells = ipow(static_cast<std::uint64_t>(n_), arity);
      for (std::uint64_t bit = 0; bit < cells; ++bit)
        if (mask & (std::uint64_t{1} << bit))
          ext.tuples.insert(cell_tuple(bit, arity, n_));
      i.preds[name] = std::move(ext);
    }
    for (const std::string& cst : sig_.consts)
      i.consts[cst] = static_cast<int>(digits_[d++]);
    for (const std::string& v : sig_.vars)
      i.vars[v] = static_cast<int>(digits_[d++]);
    return i;
  }

  bool next() {
    for (std::size_t k = digits_.size(); k-- > 0;) {
      if (++digits_[k] < radices_[k]) return true;
      digits_[k] = 0;
    }
    return false;
  }

  bool empty_signature() const { return digits_.empty(); }

 private:
  const Signature& sig_;
  int n_;
  std::vector<std::uint64_t> radices_;
  std::vector<std::uint64_t> digits_;
};

template <typename Pred>
std::optional<Interpretation> search(const std::vector<Formula>& fs,
                                     const OracleOptions& opts, Pred hit) {
  if (opts.max_domain > 6 && !opts.allow_large_domains)
    throw Error(ErrorCode::BadArgs,
                "domain sizes beyond 6 require allow_large_domains");
  Signature sig = signature_of(fs);
  std::uint64_t seen = 0;
  for (int n = 1; n <= opts.max_domain; ++n) {
    Enumerator en(sig, n);
    std::uint64_t total = en.total();
    if (seen > opts.budget || total > opts.budget - seen)
      throw Error(ErrorCode::Budget,
                  "interpretation count exceeds budget of " +
                      std::to_string(opts.budget));
    seen += total;
    for (;;) {
      Interpretation i = en.current();
      if (hit(i)) return i;
      if (en.empty_signature() || !en.next()) break;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Interpretation> check_equiv(const Formula& f, const Formula& g,
                                          const OracleOptions& opts) {
  return search({f, g}, opts, [&](const Interpretation& i) {
    return evaluate(f, i) != evaluate(g, i);
  });
}

std::optional<Interpretation> check_entails(const Formula& f, const Formula& g,
                                            const OracleOptions& opts) {
  return search({f, g}, opts, [&](const Interpretation& i) {
    return evaluate(f, i) && !evaluate(g, i);
  });
}

std::optional<Interpretation> find_model(const Formula& f,
                                         const OracleOptions& opts) {
  return search({f}, opts,
                [&](const Interpretation& i) { return evaluate(f, i); });
}

std::optional<Interpretation> find_countermodel(const Formula& f,
                                                const OracleOptions& opts) {
  return search({f}, opts,
                [&](const Interpretation& i) { return !evaluate(f, i); });
}

namespace {

std::uint64_t qrank(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Eq:
      return 0;
    case Kind::Forall:
    case Kind::Exists:
      return 1 + qrank(f.child(0));
    case Kind::AtLeast:
    case Kind::AllBut:
      return static_cast<std::uint64_t>(f.count()) + qrank(f.child(0));
    case Kind::ForallPred:
    case Kind::ExistsPred:
      throw Error(ErrorCode::Class,
                  "small_model_bound is defined for first-order formulas");
    default: {
      std::uint64_t m = 0;
      for (const Formula& k : f.kids()) m = std::max(m, qrank(k));
      return m;
    }
  }
}

}  // namespace

std::uint64_t small_model_bound(const Formula& f) {
  std::uint64_t q = qrank(f);
  std::size_t m = free_symbols(f).preds.size();
  if (m >= 58) return UINT64_MAX;
  std::uint64_t bound = q * (std::uint64_t{1} << m);
  return bound < 1 ? 1 : bound;
}

std::string describe(const Interpretation& i) {
  std::ostringstream os;
  os << "domain size " << i.domain_size << " (elements 0";
  for (int e = 1; e < i.domain_size; ++e) os << ", " << e;
  os << ")\n";
  for (const auto& [name, ext] : i.preds) {
    os << "  pred " << name << "/" << ext.arity << " = {";
    bool first = true;
    for (const auto& tup : ext.tuples) {
      if (!first) os << ", ";
      first = false;
      if (tup.empty()) {
        os << "()";
      } else if (tup.size() == 1) {
        os << tup[0];
      } else {
        os << '(' << tup[0];
        for (std::size_t k = 1; k < tup.size(); ++k) os << ',' << tup[k];
        os << ')';
      }
    }
    os << "}\n";
  }
  for (const auto& [name, e] : i.consts) os << "  const " << name << " = " << e << "\n";
  for (const auto& [name, e] : i.vars) os << "  var " << name << " = " << e << "\n";
  return os.str();
}

}  // namespace monel
