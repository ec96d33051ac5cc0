#include "ury/suites.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "ury/domain_rep.hpp"
#include "ury/embedding.hpp"
#include "ury/funcspace.hpp"
#include "ury/prob_select.hpp"

namespace ury {

Json check_report_to_json(const CheckReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["pass"] = r.pass();
  Json as = Json::array();
  for (const auto& a : r.assertions) {
    Json e;
    e["name"] = a.name;
    e["pass"] = a.pass;
    if (!a.witness.empty()) e["witness"] = a.witness;
    as.push_back(e);
  }
  j["assertions"] = as;
  return j;
}

namespace {

Rat random_rat(std::mt19937_64& rng, int num_range, int den_range, bool signed_value = false) {
  Rat r(static_cast<int>(rng() % num_range) + 1, static_cast<int>(rng() % den_range) + 1);
  if (signed_value && rng() % 2) r = -r;
  return r;
}

std::vector<int> random_subset(std::mt19937_64& rng, int universe, int max_size) {
  int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_size));
  std::set<int> s;
  while (static_cast<int>(s.size()) < std::min(size, universe))
    s.insert(static_cast<int>(rng() % static_cast<unsigned>(universe)));
  return std::vector<int>(s.begin(), s.end());
}

UrysohnBuilder built_builder(const SuiteConfig& cfg) {
  UrysohnBuilder b;
  b.run_bookkeeping(cfg.steps, cfg.height);
  return b;
}

// --------------------------------------------------------------- metric-axioms

CheckReport suite_metric_axioms(const SuiteConfig& cfg) {
  CheckReport rep{"metric-axioms", {}};
  UrysohnBuilder b;
  int done = b.run_bookkeeping(cfg.steps, cfg.height);
  rep.add("bookkeeping-steps", done == cfg.steps,
          "requested " + std::to_string(cfg.steps) + ", performed " + std::to_string(done));
  auto serial = validate_metric_serial(b.space());
  auto parallel = validate_metric(b.space());
  rep.add("triangle-exhaustive-serial", serial.ok(),
          serial.ok() ? "" : serial.violations.front().describe());
  rep.add("triangle-exhaustive-parallel", parallel.ok(),
          parallel.ok() ? "" : parallel.violations.front().describe());
  rep.add("serial-parallel-agree", serial.violations.size() == parallel.violations.size());

  // Random admissible extensions keep random small spaces valid.
  std::mt19937_64 rng(cfg.seed);
  bool all_valid = true;
  std::string witness;
  for (int t = 0; t < cfg.trials && all_valid; ++t) {
    FinMetric m;
    m.points = {0};
    m.dist = {{Rat(0)}};
    for (int grow = 0; grow < 5; ++grow) {
      auto base = random_subset(rng, m.size(), 3);
      std::vector<Rat> raw;
      for (size_t i = 0; i < base.size(); ++i) raw.push_back(random_rat(rng, 8, 4));
      ExtensionRequest req{base, repair_targets(m, base, raw, Rat(1, 64))};
      m = urysohn_extend(m, req);
    }
    auto v = validate_metric_serial(m);
    if (!v.ok()) {
      all_valid = false;
      witness = v.violations.front().describe();
    }
  }
  rep.add("random-extensions-stay-metric", all_valid, witness);
  return rep;
}

// ------------------------------------------------------------------ saturation

CheckReport suite_saturation(const SuiteConfig& cfg) {
  CheckReport rep{"saturation", {}};
  UrysohnBuilder b = built_builder(cfg);
  std::mt19937_64 rng(cfg.seed);
  bool all_exact = true, all_idempotent = true;
  std::string witness;
  for (int t = 0; t < cfg.trials; ++t) {
    auto base = random_subset(rng, b.space().size(), 4);
    std::vector<Rat> raw;
    for (size_t i = 0; i < base.size(); ++i) raw.push_back(random_rat(rng, 32, 16));
    ExtensionRequest req{base, repair_targets(b.space(), base, raw, Rat(1, 128))};
    UPoint y = b.realize_rational(req);
    for (size_t i = 0; i < base.size(); ++i) {
      Rat got = b.space().d(y.index, base[i]);
      if (got != req.targets[i]) {
        all_exact = false;
        std::ostringstream os;
        os << "d(" << y.index << "," << base[i] << ") = " << rat_str(got) << " != "
           << rat_str(req.targets[i]);
        witness = os.str();
      }
    }
    if (b.realize_rational(req).index != y.index) all_idempotent = false;
  }
  rep.add("realizations-exact", all_exact, witness);
  rep.add("repeat-requests-reuse", all_idempotent);
  rep.add("space-still-metric", validate_metric(b.space()).ok());
  return rep;
}

// ----------------------------------------------------------------- observation

CheckReport suite_observation(const SuiteConfig& cfg) {
  CheckReport rep{"observation", {}};
  UrysohnBuilder b = built_builder(cfg);
  std::mt19937_64 rng(cfg.seed);
  bool equivalence = true, exactness = true;
  std::string witness;
  for (int t = 0; t < cfg.trials; ++t) {
    auto centers = random_subset(rng, b.space().size(), 4);
    std::vector<std::pair<UPoint, Rat>> balls;
    ExtensionRequest sphere;
    for (int c : centers) {
      Rat r = random_rat(rng, 24, 12);
      balls.push_back({UPoint{c}, r});
      sphere.base.push_back(c);
      sphere.targets.push_back(r);
    }
    bool cond = b.balls_intersect(balls);
    bool admissible = extension_admissible(b.space(), sphere);
    if (cond != admissible) {
      equivalence = false;
      witness = "pairwise condition " + std::string(cond ? "holds" : "fails") +
                " but sphere request admissibility disagrees";
    }
    if (cond) {
      UPoint w = b.witness_intersection(balls);
      for (const auto& [c, r] : balls)
        if (b.space().d(w.index, c.index) != r) exactness = false;
    } else {
      try {
        b.witness_intersection(balls);
        equivalence = false;
        witness = "witness succeeded although the pairwise condition fails";
      } catch (const std::runtime_error&) {
      }
    }
  }
  rep.add("condition-iff-witness", equivalence, witness);
  rep.add("witness-distances-exact", exactness);
  if (cfg.inject_fault) {
    // Deliberately bad family: d = 1, radii 2/5.
    UPoint a = b.realize_rational({{}, {}});
    UPoint c = b.realize_rational({{a.index}, {Rat(1)}});
    bool cond = b.balls_intersect({{a, Rat(2, 5)}, {c, Rat(2, 5)}});
    std::ostringstream os;
    os << "injected family: d(" << a.index << "," << c.index << ") = 1 > 2/5 + 2/5 = 4/5";
    rep.add("injected-bad-radius", cond, os.str());
  }
  return rep;
}

// ------------------------------------------------------------------- selection

CheckReport suite_selection(const SuiteConfig& cfg) {
  CheckReport rep{"selection", {}};
  auto rl = builtin_space("real-line");
  std::mt19937_64 rng(cfg.seed);

  bool sums_ok = true, support_ok = true, dominance_ok = true, paths_agree = true;
  std::string witness;
  int deepest = std::max(cfg.max_level, 8);
  for (int t = 0; t < cfg.trials; ++t) {
    Rat x = random_rat(rng, 64, 32, true);
    SpacePoint pt = point_from_stream(rl, fc_const(x));
    for (int n = 0; n <= deepest; n += (n < 8 ? 1 : 7)) {
      SelectionLevel lvl = metric_selection_level(rl, n);
      // Exact coordinate path: support iff d(x,a) < d(x,A_n) + delta_n.
      Dist d = lvl.mu_coords({x});
      Rat sum(0);
      for (const auto& m : d.mass) sum += m;
      if (sum != 1) {
        sums_ok = false;
        witness = "sum = " + rat_str(sum) + " at n = " + std::to_string(n);
      }
      std::vector<Rat> dists;
      for (int c : lvl.carrier) dists.push_back(rat_abs(x - rl->value(c)));
      Rat dmin = *std::min_element(dists.begin(), dists.end());
      int arg = 0;
      for (size_t i = 0; i < dists.size(); ++i) {
        bool supported = d.mass[i] > 0;
        bool predicted = dists[i] < dmin + lvl.delta;
        if (supported != predicted) support_ok = false;
        if (dists[i] < dists[arg]) arg = static_cast<int>(i);
      }
      for (const auto& m : d.mass)
        if (d.mass[arg] < m) dominance_ok = false;
      // Index-stream path: sums to 1 at every level, matches the exact path
      // once the stream precision separates x from all simpler rationals.
      Dist di = lvl.mu(pt);
      Rat sumi(0);
      for (const auto& m : di.mass) sumi += m;
      if (sumi != 1) sums_ok = false;
      if (n >= 6 && di.mass != d.mass) paths_agree = false;
    }
  }
  rep.add("masses-sum-to-one-exactly", sums_ok, witness);
  rep.add("support-is-strict-ball", support_ok);
  rep.add("nearest-point-dominance", dominance_ok);
  rep.add("stream-path-matches-exact-path", paths_agree);

  // Hand-computed case: A_1 = {0, 1}, x = 1/2 -> (1/2, 1/2).
  {
    SelectionLevel lvl = metric_selection_level(rl, 1);
    Dist d = lvl.mu(point_from_stream(rl, fc_const(Rat(1, 2))));
    bool ok = lvl.delta == Rat(1, 2) && d.mass.size() == 2 && d.mass[0] == Rat(1, 2) &&
              d.mass[1] == Rat(1, 2);
    rep.add("hand-case-A1-half", ok,
            "delta = " + rat_str(lvl.delta) + ", masses = " +
                (d.mass.size() == 2 ? rat_str(d.mass[0]) + "," + rat_str(d.mass[1]) : "?"));
  }

  // Convergence mod measures: x_n = 1/3 + 2^-n -> 1/3. Sampling runs at
  // moderate depth (the dense index of x_n grows like 2^n); the envelope
  // alone is followed to n = 64 through the value-level path.
  {
    Rat x(1, 3);
    SpacePoint target = point_from_stream(rl, fc_const(x));
    auto moving = [rl, x](int n) { return point_from_stream(rl, fc_const(x + pow2_neg(n))); };
    int levels = std::min(std::max(cfg.max_level, 8), 10);
    HarnessReport h = convergence_harness(rl, levels, target, moving, std::max(cfg.trials / 2, 5),
                                          cfg.seed);
    rep.add("trajectories-inside-envelope", h.all_inside);

    auto moving_value = [x](int n) { return fc_const(x + pow2_neg(n)); };
    auto env = envelope_schedule(rl, 64, fc_const(x), moving_value);
    Rat tail = env.back().envelope;
    rep.add("envelope-below-2^-5-by-64", tail < pow2_neg(5), "envelope(64) = " + rat_str(tail));
    bool monotone_tail = true;
    for (size_t i = 8; i < env.size(); ++i)
      if (env[i].envelope > env[i - 1].envelope) monotone_tail = false;
    rep.add("envelope-eventually-decreasing", monotone_tail);
  }
  return rep;
}

// ------------------------------------------------------------------------ lift

CheckReport suite_lift(const SuiteConfig& cfg) {
  CheckReport rep{"lift", {}};
  auto rl = builtin_real_line_prefixed({Rat(0), Rat(1, 2), Rat(1)});
  LevelPtr dom = base_level(rl, 2);
  LevelPtr cod = base_level(rl, 2);
  LiftedLevel lift(dom, cod);
  std::mt19937_64 rng(cfg.seed);

  auto identity = fn_lambda([](const FnPointPtr& x) { return x; });
  auto shifted = fn_lambda([](const FnPointPtr& x) {
    const auto& c = std::get<std::vector<Rat>>(x->v);
    return fn_vec({c[0] + Rat(1, 4)});
  });

  std::vector<std::pair<FnPointPtr, const char*>> cases = {{identity, "identity"},
                                                           {shifted, "shift-quarter"}};
  for (const auto& [f, fname] : cases) {
    Dist eta = lift.mu(f);
    Rat sum(0);
    for (const auto& m : eta.mass) sum += m;
    rep.add(std::string("eta-") + fname + "-sums-to-one", sum == 1 && eta.mass.size() == 27,
            "sum = " + rat_str(sum) + " over " + std::to_string(eta.mass.size()));

    // Coordinatewise sampler matches the enumerated masses (chi-square).
    int draws = std::max(cfg.trials * 100, 1000);
    std::vector<long> observed(27, 0);
    for (int t = 0; t < draws; ++t) ++observed[lift.encode(lift.sample(f, rng))];
    Rat stat(0);
    bool support_match = true;
    for (int b = 0; b < 27; ++b) {
      Rat e = eta.mass[b] * draws;
      if (e == 0) {
        if (observed[b] != 0) support_match = false;
        continue;
      }
      Rat diff = Rat(observed[b]) - e;
      stat += diff * diff / e;
    }
    rep.add(std::string("sampler-support-") + fname, support_match);
    rep.add(std::string("sampler-chisq-") + fname, stat < Rat(60),
            "chi-square = " + rat_str(stat));
  }

  // Pushforward conservation and agreement of nu* with the direct convex sum.
  {
    bool conserve = true, agree = true, propagate = true;
    for (int b = 0; b < 27; ++b) {
      auto phi = lift.decode(b);
      for (Rat xv : {Rat(0), Rat(1, 4), Rat(1, 2), Rat(7, 8)}) {
        auto x = fn_vec({xv});
        Dist mu = dom->mu(x);
        Dist push = pushforward(mu, phi, 3);
        Rat sum(0);
        for (const auto& m : push.mass) sum += m;
        if (sum != 1) conserve = false;
        auto lifted = lift.apply_table(phi, x);
        const auto& got = std::get<std::vector<Rat>>(lifted->v);
        Rat direct(0);
        for (size_t a = 0; a < phi.size(); ++a)
          direct += mu.mass[a] * rl->value(phi[a]);
        if (got.size() != 1 || got[0] != direct) agree = false;
      }
    }
    // Support propagation over sampled phi and random x.
    for (int t = 0; t < std::max(cfg.trials * 10, 100); ++t) {
      Rat xv = random_rat(rng, 8, 8);
      auto x = fn_vec({xv});
      auto phi = lift.sample(identity, rng);
      Dist mu = dom->mu(x);
      for (int a : mu.support()) {
        Dist lam = lift.factor(identity, a);
        if (lam.mass[static_cast<size_t>(phi[static_cast<size_t>(a)])] == 0) propagate = false;
      }
    }
    rep.add("pushforward-conserves-mass", conserve);
    rep.add("lift-apply-matches-direct-sum", agree);
    rep.add("support-propagation", propagate);
  }

  // Product marginals are exact.
  {
    auto line = builtin_space("real-line");
    bool marginals = true;
    for (int t = 0; t < cfg.trials; ++t) {
      int n = 1 + static_cast<int>(rng() % 4);
      LevelPtr a = base_level(line, n);
      LevelPtr b = base_level(rl, n);
      ProductLevel prod({a, b});
      auto xa = fn_vec({random_rat(rng, 16, 8, true)});
      auto xb = fn_vec({random_rat(rng, 16, 8, true)});
      Dist da = a->mu(xa), db = b->mu(xb);
      Dist joint = prod.mu(fn_tuple({xa, xb}));
      for (int i = 0; i < a->size(); ++i) {
        Rat m(0);
        for (int j = 0; j < b->size(); ++j) m += joint.mass[i + a->size() * j];
        if (m != da.mass[i]) marginals = false;
      }
      for (int j = 0; j < b->size(); ++j) {
        Rat m(0);
        for (int i = 0; i < a->size(); ++i) m += joint.mass[i + a->size() * j];
        if (m != db.mass[j]) marginals = false;
      }
    }
    rep.add("product-marginals-exact", marginals);
  }
  return rep;
}

// ------------------------------------------------------------------ domain-rep

CheckReport suite_domain_rep(const SuiteConfig& cfg) {
  CheckReport rep{"domain-rep", {}};
  auto rl = builtin_space("real-line");
  std::mt19937_64 rng(cfg.seed);

  bool roundtrip = true;
  std::string witness;
  int depth = std::max(cfg.max_level, 8);
  for (int t = 0; t < std::max(cfg.trials / 2, 10); ++t) {
    Rat x = random_rat(rng, 64, 32, true);
    SpacePoint pt = point_from_stream(rl, fc_const(x));
    auto chain = least_ideal_chain(*rl, pt, depth);
    SpacePoint back = delta_extract(*rl, chain);
    for (int n = 0; n <= depth; ++n) {
      Rat err = rat_abs(rl->value(back.at(n)) - x);
      if (err > pow2_neg(n)) {
        roundtrip = false;
        witness = "x = " + rat_str(x) + ", error " + rat_str(err) + " at n = " + std::to_string(n);
      }
    }
  }
  rep.add("round-trip-within-2^-n", roundtrip, witness);

  // Preorder laws on certified least-ideal clusters.
  {
    SpacePoint pt = point_from_stream(rl, fc_const(Rat(1, 2)));
    auto clusters = least_ideal_clusters(*rl, pt, 3);
    bool reflexive = true, transitive = true, valid = true;
    for (const auto& k : clusters) {
      if (!cluster_valid(*rl, k)) valid = false;
      if (!cluster_leq(*rl, k, k)) reflexive = false;
    }
    int m = std::min<int>(static_cast<int>(clusters.size()), 24);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          if (cluster_leq(*rl, clusters[a], clusters[b]) &&
              cluster_leq(*rl, clusters[b], clusters[c]) &&
              !cluster_leq(*rl, clusters[a], clusters[c]))
            transitive = false;
    rep.add("least-ideal-clusters-valid", valid);
    rep.add("cluster-leq-reflexive", reflexive);
    rep.add("cluster-leq-transitive", transitive);
    rep.add("least-ideal-monotone",
            least_ideal_clusters(*rl, pt, 2).size() <= clusters.size());
  }

  // Upward closure: extending a representing chain never refutes.
  {
    bool upward = true;
    for (int t = 0; t < std::max(cfg.trials / 4, 5); ++t) {
      Rat x = random_rat(rng, 16, 8, true);
      SpacePoint pt = point_from_stream(rl, fc_const(x));
      auto chain = least_ideal_chain(*rl, pt, 6);
      IdealApprox shorter{std::vector<Cluster>(chain.begin(), chain.begin() + 4)};
      IdealApprox longer{chain};
      if (ideal_represents(*rl, shorter, pt, Rat(1, 8), 20) == TriState::Yes &&
          ideal_represents(*rl, longer, pt, Rat(1, 8), 20) == TriState::No)
        upward = false;
    }
    rep.add("upward-closure", upward);
  }

  // Hausdorff uniqueness: a chain tight around x refutes any distant y.
  {
    bool unique = true;
    std::string w;
    for (int t = 0; t < std::max(cfg.trials / 4, 5); ++t) {
      Rat x = random_rat(rng, 8, 4, true);
      Rat y = x + random_rat(rng, 4, 2);
      SpacePoint px = point_from_stream(rl, fc_const(x));
      SpacePoint py = point_from_stream(rl, fc_const(y));
      int deep = 4;
      while (pow2_neg(deep + 1) >= rat_abs(x - y) / 2) ++deep;
      IdealApprox tight{least_ideal_chain(*rl, px, deep + 2)};
      if (ideal_represents(*rl, tight, px, Rat(1), 24) == TriState::No) unique = false;
      if (ideal_represents(*rl, tight, py, Rat(1), 24) != TriState::No) {
        unique = false;
        w = "x = " + rat_str(x) + ", y = " + rat_str(y) + " not refuted";
      }
    }
    rep.add("hausdorff-uniqueness", unique, w);
  }
  return rep;
}

// ------------------------------------------------------------------- embedding

CheckReport suite_embedding(const SuiteConfig& cfg) {
  CheckReport rep{"embedding", {}};
  std::vector<Rat> five = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) pairs.push_back({i, j});

  int p = cfg.precision;
  {
    UrysohnBuilder b;
    auto x = builtin_rational_points(five);
    EmbeddingIntoU e = embed_into_U(x, b, 5, p);
    auto v = e.verify(pairs, p);
    Rat worst(0);
    for (const auto& en : v.entries) worst = std::max(worst, en.discrepancy);
    rep.add("five-points-exact-oracle", worst <= pow2_neg(p - 2),
            "worst discrepancy " + rat_str(worst));
    rep.add("builder-metric-after-embedding", validate_metric(b.space()).ok());
  }
  {
    // Same points, oracle truncated to p binary digits (inexact presentation).
    UrysohnBuilder b;
    auto exact = builtin_rational_points(five);
    auto trunc = std::make_shared<EffSpace>(*exact);
    trunc->exact = false;
    trunc->dist = [exact](int i, int j, int prec) {
      Rat d = exact->dist(i, j, prec);
      Int scale = Int(1) << std::max(prec, 0);
      return Rat(Int(numerator(d) * scale / denominator(d)), scale);
    };
    EmbeddingIntoU e = embed_into_U(trunc, b, 5, p);
    IsometryReport v = e.verify(pairs, p);
    Rat worst(0);
    for (const auto& en : v.entries) {
      Rat disc = rat_abs(en.embedded - rat_abs(five[en.i] - five[en.j]));
      worst = std::max(worst, disc);
    }
    rep.add("five-points-truncated-oracle", worst <= pow2_neg(p - 2),
            "worst discrepancy " + rat_str(worst));
  }
  {
    FinMetric m;
    m.points = {0, 1, 2, 3};
    auto R = [](int v) { return Rat(v); };
    m.dist = {{R(0), R(1), R(2), R(2)},
              {R(1), R(0), R(2), R(2)},
              {R(2), R(2), R(0), R(3)},
              {R(2), R(2), R(3), R(0)}};
    UrysohnBuilder b;
    EmbeddingIntoU e = embed_into_U(builtin_finite(m), b, 4, p);
    bool zero = true;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (b.space().d(e.image(i).point(p), e.image(j).point(p)) != m.d(i, j)) zero = false;
    rep.add("finite-four-point-zero-discrepancy", zero);
  }
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"metric-axioms", "saturation", "observation",
                                                 "selection",     "lift",       "domain-rep",
                                                 "embedding"};
  return names;
}

CheckReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "metric-axioms") return suite_metric_axioms(cfg);
  if (name == "saturation") return suite_saturation(cfg);
  if (name == "observation") return suite_observation(cfg);
  if (name == "selection") return suite_selection(cfg);
  if (name == "lift") return suite_lift(cfg);
  if (name == "domain-rep") return suite_domain_rep(cfg);
  if (name == "embedding") return suite_embedding(cfg);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace ury
