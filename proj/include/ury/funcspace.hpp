#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ury/eff_space.hpp"
#include "ury/prob_select.hpp"
#include "ury/urysohn.hpp"

namespace ury {

struct FnPoint;
using FnPointPtr = std::shared_ptr<const FnPoint>;

// Evaluable element of an interpreted type: a base-space point, an exact
// coordinate vector, a point of U0, a tuple, or a function value.
struct FnPoint {
  using Fn = std::function<FnPointPtr(const FnPointPtr&)>;
  std::variant<SpacePoint, std::vector<Rat>, UPoint, std::vector<FnPointPtr>, Fn> v;

  std::string describe() const;
};

FnPointPtr fn_base(SpacePoint p);
FnPointPtr fn_vec(std::vector<Rat> coords);
FnPointPtr fn_upoint(UPoint p);
FnPointPtr fn_tuple(std::vector<FnPointPtr> parts);
FnPointPtr fn_lambda(FnPoint::Fn f);

FnPointPtr apply(const FnPointPtr& f, const FnPointPtr& x);

// One level of a probabilistic selection on an interpreted type.
class Level {
 public:
  virtual ~Level() = default;
  int n = 0;
  virtual int size() const = 0;
  virtual FnPointPtr nu(int a) = 0;
  virtual Dist mu(const FnPointPtr& x) = 0;
  virtual bool semiconvex() const { return false; }
  virtual FnPointPtr combine(const Dist&) {
    throw std::logic_error("combine: level is not semiconvex");
  }
  virtual std::string label(int a) = 0;
};

using LevelPtr = std::shared_ptr<Level>;

// Base type interpreted over an effective space or over U (builder-backed).
LevelPtr base_level(const EffSpacePtr& space, int n);
LevelPtr urysohn_base_level(UrysohnBuilder& b, int n);

// Product selection: cartesian carrier, componentwise nu, exact product
// distribution. Carrier index is mixed-radix, first component fastest.
class ProductLevel : public Level {
 public:
  ProductLevel(std::vector<LevelPtr> components);
  int size() const override;
  FnPointPtr nu(int a) override;
  Dist mu(const FnPointPtr& x) override;
  std::string label(int a) override;

  std::vector<int> decode(int a) const;
  const std::vector<LevelPtr>& components() const { return components_; }

 private:
  std::vector<LevelPtr> components_;
};

LevelPtr product_selection(std::vector<LevelPtr> components);

// Lifted selection <B_n = A_n -> C_n, nu*_n, eta_n>. eta_n is kept in
// factorized product form; mu() materializes it and is only usable at
// brute-forceable sizes.
class LiftedLevel : public Level {
 public:
  LiftedLevel(LevelPtr domain, LevelPtr codomain);
  int size() const override;
  FnPointPtr nu(int b) override;
  Dist mu(const FnPointPtr& f) override;
  std::string label(int b) override;

  const LevelPtr& domain() const { return domain_; }
  const LevelPtr& codomain() const { return codomain_; }

  // phi as a table over the domain carrier, values in the codomain carrier.
  std::vector<int> decode(int b) const;
  int encode(const std::vector<int>& phi) const;

  FnPointPtr apply_table(const std::vector<int>& phi, const FnPointPtr& x);
  Dist factor(const FnPointPtr& f, int a);                     // lambda_n(f(nu_n(a)))
  std::vector<int> sample(const FnPointPtr& f, std::mt19937_64& rng);

 private:
  LevelPtr domain_;
  LevelPtr codomain_;
};

using LiftedLevelPtr = std::shared_ptr<LiftedLevel>;

// nu*_n(phi)(x) = h_n(pushforward of mu_n(x) along phi).
FnPointPtr lift_apply(LiftedLevel& level, const std::vector<int>& phi, const FnPointPtr& x);
Dist lift_dist_factor(LiftedLevel& level, const FnPointPtr& f, int a);
std::vector<int> lift_sample(LiftedLevel& level, const FnPointPtr& f, std::mt19937_64& rng);
Dist pushforward(const Dist& mu, const std::vector<int>& phi, int codomain_size);

// Type expressions: V<i>, (t->t), (t,...,t)->t.
struct TypeExpr;
using TypeExprPtr = std::shared_ptr<const TypeExpr>;
struct TypeExpr {
  enum Kind { Base, Arrow, Product } kind;
  int var = 0;                      // Base
  TypeExprPtr lhs, rhs;             // Arrow
  std::vector<TypeExprPtr> parts;   // Product
  std::string str() const;
};

TypeExprPtr parse_type(const std::string& s);

// Assignment of base variables to spaces. A variable mapped to a builder is
// interpreted as the Urysohn space.
struct BaseAssignment {
  std::map<int, EffSpacePtr> spaces;
  std::map<int, UrysohnBuilder*> urysohn;
};

// Recursive interpretation at level n. Arrow chains are curried so that
// every lift targets a base type with a semiconvex structure; other
// codomains are rejected.
LevelPtr interpret_type(const TypeExprPtr& t, const BaseAssignment& bases, int n);

// Diagonal dense enumeration: all carrier images at level 0, then level 1,
// and so on, until `count` points are produced.
std::vector<FnPointPtr> enumerate_dense(const TypeExprPtr& t, const BaseAssignment& bases,
                                        int count);

}  // namespace ury
