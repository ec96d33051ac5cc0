#include "ury/funcspace.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ury {

namespace {

constexpr long kMaterializeLimit = 1 << 16;

}  // namespace

std::string FnPoint::describe() const {
  struct V {
    std::string operator()(const SpacePoint& p) const { return "point@" + p.space_tag; }
    std::string operator()(const std::vector<Rat>& c) const {
      std::ostringstream os;
      os << "(";
      for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << rat_str(c[i]);
      os << ")";
      return os.str();
    }
    std::string operator()(const UPoint& u) const { return "u" + std::to_string(u.index); }
    std::string operator()(const std::vector<FnPointPtr>& t) const {
      std::ostringstream os;
      os << "<";
      for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i]->describe();
      os << ">";
      return os.str();
    }
    std::string operator()(const FnPoint::Fn&) const { return "<function>"; }
  };
  return std::visit(V{}, v);
}

FnPointPtr fn_base(SpacePoint p) { return std::make_shared<FnPoint>(FnPoint{std::move(p)}); }
FnPointPtr fn_vec(std::vector<Rat> c) { return std::make_shared<FnPoint>(FnPoint{std::move(c)}); }
FnPointPtr fn_upoint(UPoint p) { return std::make_shared<FnPoint>(FnPoint{p}); }
FnPointPtr fn_tuple(std::vector<FnPointPtr> t) {
  return std::make_shared<FnPoint>(FnPoint{std::move(t)});
}
FnPointPtr fn_lambda(FnPoint::Fn f) { return std::make_shared<FnPoint>(FnPoint{std::move(f)}); }

FnPointPtr apply(const FnPointPtr& f, const FnPointPtr& x) {
  const auto* fn = std::get_if<FnPoint::Fn>(&f->v);
  if (!fn) throw std::invalid_argument("apply: not a function value");
  return (*fn)(x);
}

// ---------------------------------------------------------------------------
// Base levels

namespace {

class EffBaseLevel : public Level {
 public:
  EffBaseLevel(const EffSpacePtr& space, int n) : sel_(metric_selection_level(space, n)) {
    this->n = n;
  }

  int size() const override { return sel_.size(); }

  FnPointPtr nu(int a) override {
    check(a);
    if (sel_.space->coords) return fn_vec(sel_.space->coords(sel_.carrier[a]));
    return fn_base(dense_point(*sel_.space, sel_.carrier[a]));
  }

  Dist mu(const FnPointPtr& x) override {
    if (const auto* c = std::get_if<std::vector<Rat>>(&x->v)) return sel_.mu_coords(*c);
    if (const auto* p = std::get_if<SpacePoint>(&x->v)) return sel_.mu(*p);
    throw std::invalid_argument("mu: point is not in this base space");
  }

  bool semiconvex() const override { return sel_.space->convex_combinable; }

  FnPointPtr combine(const Dist& m) override {
    if (!semiconvex()) return Level::combine(m);
    if (!op_) {
      std::vector<std::vector<Rat>> vs;
      for (int c : sel_.carrier) vs.push_back(sel_.space->coords(c));
      op_ = banach_semiconvex(vs);
    }
    return fn_vec(op_->combine(m));
  }

  std::string label(int a) override {
    check(a);
    return sel_.space->label(sel_.carrier[a]);
  }

  const SelectionLevel& selection() const { return sel_; }

 private:
  void check(int a) const {
    if (a < 0 || a >= size()) throw std::invalid_argument("level: carrier index out of range");
  }
  SelectionLevel sel_;
  std::optional<BanachSemiconvex> op_;
};

class UrysohnBaseLevel : public Level {
 public:
  UrysohnBaseLevel(UrysohnBuilder& b, int n) : b_(&b) {
    this->n = n;
    int count = std::min(n + 1, b.space().size());
    if (count < 1)
      throw std::invalid_argument("urysohn_base_level: builder has no points; run bookkeeping");
    for (int i = 0; i < count; ++i) carrier_.push_back(i);
    delta_ = pow2_neg(n);
    for (size_t i = 0; i < carrier_.size(); ++i)
      for (size_t j = i + 1; j < carrier_.size(); ++j)
        delta_ = std::min(delta_, b.space().d(carrier_[i], carrier_[j]));
  }

  int size() const override { return static_cast<int>(carrier_.size()); }

  FnPointPtr nu(int a) override { return fn_upoint(UPoint{carrier_.at(a)}); }

  Dist mu(const FnPointPtr& x) override {
    const auto* u = std::get_if<UPoint>(&x->v);
    if (!u) throw std::invalid_argument("mu: point is not in U");
    std::vector<Rat> dists;
    for (int c : carrier_) dists.push_back(b_->space().d(u->index, c));
    Rat dmin = *std::min_element(dists.begin(), dists.end());
    std::vector<Rat> num(dists.size());
    Rat sum(0);
    for (size_t i = 0; i < dists.size(); ++i) {
      num[i] = rat_monus(dmin + delta_, dists[i]);
      sum += num[i];
    }
    Dist d;
    d.mass.resize(num.size());
    for (size_t i = 0; i < num.size(); ++i) d.mass[i] = num[i] / sum;
    return d;
  }

  bool semiconvex() const override { return true; }

  FnPointPtr combine(const Dist& m) override {
    if (!op_) op_.emplace(*b_, carrier_);
    return fn_upoint(op_->combine(m));
  }

  std::string label(int a) override { return "u" + std::to_string(carrier_.at(a)); }

 private:
  UrysohnBuilder* b_;
  std::vector<int> carrier_;
  Rat delta_;
  std::optional<UrysohnSemiconvex> op_;
};

}  // namespace

LevelPtr base_level(const EffSpacePtr& space, int n) {
  return std::make_shared<EffBaseLevel>(space, n);
}

LevelPtr urysohn_base_level(UrysohnBuilder& b, int n) {
  return std::make_shared<UrysohnBaseLevel>(b, n);
}

// ---------------------------------------------------------------------------
// Products

ProductLevel::ProductLevel(std::vector<LevelPtr> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("product_selection: empty component list");
  n = components_.front()->n;
  for (const auto& c : components_)
    if (c->n != n) throw std::invalid_argument("product_selection: mixed level indices");
}

int ProductLevel::size() const {
  long s = 1;
  for (const auto& c : components_) s *= c->size();
  if (s > kMaterializeLimit) throw std::length_error("product carrier too large");
  return static_cast<int>(s);
}

std::vector<int> ProductLevel::decode(int a) const {
  std::vector<int> out;
  for (const auto& c : components_) {
    out.push_back(a % c->size());
    a /= c->size();
  }
  return out;
}

FnPointPtr ProductLevel::nu(int a) {
  auto idx = decode(a);
  std::vector<FnPointPtr> parts;
  for (size_t i = 0; i < components_.size(); ++i) parts.push_back(components_[i]->nu(idx[i]));
  return fn_tuple(std::move(parts));
}

Dist ProductLevel::mu(const FnPointPtr& x) {
  const auto* t = std::get_if<std::vector<FnPointPtr>>(&x->v);
  if (!t || t->size() != components_.size())
    throw std::invalid_argument("mu: point is not a tuple of the right arity");
  std::vector<Dist> parts;
  for (size_t i = 0; i < components_.size(); ++i) parts.push_back(components_[i]->mu((*t)[i]));
  Dist out;
  out.mass.assign(static_cast<size_t>(size()), Rat(0));
  for (int a = 0; a < size(); ++a) {
    auto idx = decode(a);
    Rat m(1);
    for (size_t i = 0; i < parts.size(); ++i) m *= parts[i].mass[idx[i]];
    out.mass[a] = m;
  }
  return out;
}

std::string ProductLevel::label(int a) {
  auto idx = decode(a);
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < components_.size(); ++i)
    os << (i ? "," : "") << components_[i]->label(idx[i]);
  os << ">";
  return os.str();
}

LevelPtr product_selection(std::vector<LevelPtr> components) {
  if (components.size() == 1) return components.front();
  return std::make_shared<ProductLevel>(std::move(components));
}

// ---------------------------------------------------------------------------
// Lifts

LiftedLevel::LiftedLevel(LevelPtr domain, LevelPtr codomain)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (domain_->n != codomain_->n)
    throw std::invalid_argument("lift: domain and codomain levels must share the index");
  if (!codomain_->semiconvex())
    throw std::invalid_argument("lift: codomain has no semiconvex structure");
  n = domain_->n;
}

int LiftedLevel::size() const {
  long s = 1;
  for (int i = 0; i < domain_->size(); ++i) {
    s *= codomain_->size();
    if (s > kMaterializeLimit) throw std::length_error("lifted carrier too large to enumerate");
  }
  return static_cast<int>(s);
}

std::vector<int> LiftedLevel::decode(int b) const {
  std::vector<int> phi(static_cast<size_t>(domain_->size()));
  for (size_t a = 0; a < phi.size(); ++a) {
    phi[a] = b % codomain_->size();
    b /= codomain_->size();
  }
  return phi;
}

int LiftedLevel::encode(const std::vector<int>& phi) const {
  if (static_cast<int>(phi.size()) != domain_->size())
    throw std::invalid_argument("encode: table arity mismatch");
  int b = 0;
  for (size_t a = phi.size(); a-- > 0;) {
    if (phi[a] < 0 || phi[a] >= codomain_->size())
      throw std::invalid_argument("encode: value outside codomain carrier");
    b = b * codomain_->size() + phi[a];
  }
  return b;
}

Dist pushforward(const Dist& mu, const std::vector<int>& phi, int codomain_size) {
  if (phi.size() != mu.mass.size()) throw std::invalid_argument("pushforward: arity mismatch");
  Dist out;
  out.mass.assign(static_cast<size_t>(codomain_size), Rat(0));
  for (size_t a = 0; a < phi.size(); ++a) out.mass[static_cast<size_t>(phi[a])] += mu.mass[a];
  return out;
}

FnPointPtr LiftedLevel::apply_table(const std::vector<int>& phi, const FnPointPtr& x) {
  Dist push = pushforward(domain_->mu(x), phi, codomain_->size());
  return codomain_->combine(push);
}

FnPointPtr LiftedLevel::nu(int b) {
  auto phi = decode(b);
  // Capture the component levels, not this: the returned value must outlive
  // the level object.
  LevelPtr dom = domain_, cod = codomain_;
  return fn_lambda([dom, cod, phi](const FnPointPtr& x) {
    return cod->combine(pushforward(dom->mu(x), phi, cod->size()));
  });
}

Dist LiftedLevel::factor(const FnPointPtr& f, int a) {
  return codomain_->mu(ury::apply(f, domain_->nu(a)));
}

Dist LiftedLevel::mu(const FnPointPtr& f) {
  int total = size();  // throws when not brute-forceable
  std::vector<Dist> factors;
  for (int a = 0; a < domain_->size(); ++a) factors.push_back(factor(f, a));
  Dist out;
  out.mass.assign(static_cast<size_t>(total), Rat(0));
  for (int b = 0; b < total; ++b) {
    auto phi = decode(b);
    Rat m(1);
    for (size_t a = 0; a < phi.size(); ++a) m *= factors[a].mass[static_cast<size_t>(phi[a])];
    out.mass[static_cast<size_t>(b)] = m;
  }
  return out;
}

std::vector<int> LiftedLevel::sample(const FnPointPtr& f, std::mt19937_64& rng) {
  std::vector<int> phi;
  for (int a = 0; a < domain_->size(); ++a) phi.push_back(factor(f, a).sample(uniform_unit(rng)));
  return phi;
}

std::string LiftedLevel::label(int b) {
  auto phi = decode(b);
  std::ostringstream os;
  os << "[";
  for (size_t a = 0; a < phi.size(); ++a)
    os << (a ? "," : "") << domain_->label(static_cast<int>(a)) << "->"
       << codomain_->label(phi[a]);
  os << "]";
  return os.str();
}

FnPointPtr lift_apply(LiftedLevel& level, const std::vector<int>& phi, const FnPointPtr& x) {
  return level.apply_table(phi, x);
}

Dist lift_dist_factor(LiftedLevel& level, const FnPointPtr& f, int a) {
  return level.factor(f, a);
}

std::vector<int> lift_sample(LiftedLevel& level, const FnPointPtr& f, std::mt19937_64& rng) {
  return level.sample(f, rng);
}

// ---------------------------------------------------------------------------
// Types

std::string TypeExpr::str() const {
  switch (kind) {
    case Base:
      return "V" + std::to_string(var);
    case Arrow:
      return "(" + lhs->str() + "->" + rhs->str() + ")";
    case Product: {
      std::ostringstream os;
      os << "(";
      for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i]->str();
      os << ")";
      return os.str();
    }
  }
  return "?";
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(const std::string& tok) {
    skip();
    if (s.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("type parse error at position " + std::to_string(pos) + ": " +
                                why);
  }

  TypeExprPtr atom() {
    skip();
    if (eat("V")) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) fail("expected digits after V");
      auto t = std::make_shared<TypeExpr>();
      t->kind = TypeExpr::Base;
      t->var = std::stoi(s.substr(start, pos - start));
      return t;
    }
    if (eat("(")) {
      std::vector<TypeExprPtr> parts{type()};
      while (eat(",")) parts.push_back(type());
      if (!eat(")")) fail("expected ')'");
      if (parts.size() == 1) return parts.front();
      auto t = std::make_shared<TypeExpr>();
      t->kind = TypeExpr::Product;
      t->parts = std::move(parts);
      return t;
    }
    fail("expected 'V<digits>' or '('");
  }

  TypeExprPtr type() {
    TypeExprPtr lhs = atom();
    if (eat("->")) {
      auto t = std::make_shared<TypeExpr>();
      t->kind = TypeExpr::Arrow;
      t->lhs = lhs;
      t->rhs = type();
      return t;
    }
    return lhs;
  }
};

}  // namespace

TypeExprPtr parse_type(const std::string& s) {
  Parser p{s};
  auto t = p.type();
  p.skip();
  if (p.pos != s.size()) p.fail("trailing input");
  return t;
}

LevelPtr interpret_type(const TypeExprPtr& t, const BaseAssignment& bases, int n) {
  switch (t->kind) {
    case TypeExpr::Base: {
      auto u = bases.urysohn.find(t->var);
      if (u != bases.urysohn.end()) return urysohn_base_level(*u->second, n);
      auto s = bases.spaces.find(t->var);
      if (s == bases.spaces.end())
        throw std::invalid_argument("interpret_type: unassigned base variable V" +
                                    std::to_string(t->var));
      return base_level(s->second, n);
    }
    case TypeExpr::Product: {
      std::vector<LevelPtr> comps;
      for (const auto& p : t->parts) comps.push_back(interpret_type(p, bases, n));
      return product_selection(std::move(comps));
    }
    case TypeExpr::Arrow: {
      // Curry: sigma_1 -> (sigma_2 -> ... -> tau) becomes one lift over the
      // product of the domain levels, targeting the base codomain tau.
      std::vector<TypeExprPtr> domains{t->lhs};
      TypeExprPtr cod = t->rhs;
      while (cod->kind == TypeExpr::Arrow) {
        domains.push_back(cod->lhs);
        cod = cod->rhs;
      }
      if (cod->kind != TypeExpr::Base)
        throw std::invalid_argument(
            "interpret_type: unsupported type, arrow codomain must resolve to a base type");
      std::vector<LevelPtr> dls;
      for (const auto& d : domains) dls.push_back(interpret_type(d, bases, n));
      LevelPtr domain = product_selection(std::move(dls));
      LevelPtr codomain = interpret_type(cod, bases, n);
      if (!codomain->semiconvex())
        throw std::invalid_argument(
            "interpret_type: unsupported type, codomain has no semiconvex structure");
      return std::make_shared<LiftedLevel>(domain, codomain);
    }
  }
  throw std::logic_error("interpret_type: bad node");
}

std::vector<FnPointPtr> enumerate_dense(const TypeExprPtr& t, const BaseAssignment& bases,
                                        int count) {
  std::vector<FnPointPtr> out;
  for (int n = 0; static_cast<int>(out.size()) < count; ++n) {
    LevelPtr lvl = interpret_type(t, bases, n);
    for (int a = 0; a < lvl->size() && static_cast<int>(out.size()) < count; ++a)
      out.push_back(lvl->nu(a));
  }
  return out;
}

}  // namespace ury
