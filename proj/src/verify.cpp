#include "cct/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cct/corpus.hpp"

namespace cct {

bool VerificationReport::all_passed() const {
    for (const auto& c : checks)
        if (c.status == "fail") return false;
    return true;
}

namespace {

struct Runner {
    VerificationReport& rep;

    void exact(const std::string& name, const std::string& citation, const std::function<bool(std::string&)>& fn) {
        CheckResult c{name, "pass", true, 0.0, citation, ""};
        try {
            std::string detail;
            if (!fn(detail)) c.status = "fail";
            c.detail = detail;
        } catch (const std::exception& e) {
            c.status = "fail";
            c.detail = e.what();
        }
        rep.checks.push_back(std::move(c));
    }

    void numeric(const std::string& name, const std::string& citation, double tol,
                 const std::function<double(std::string&)>& fn) {
        CheckResult c{name, "pass", false, 0.0, citation, ""};
        try {
            std::string detail;
            c.residual = fn(detail);
            c.detail = detail;
            if (!(c.residual < tol)) c.status = "fail";
        } catch (const std::exception& e) {
            c.status = "fail";
            c.detail = e.what();
        }
        rep.checks.push_back(std::move(c));
    }

    void skipped(const std::string& name, const std::string& citation, const std::string& why) {
        rep.checks.push_back({name, "skipped", true, 0.0, citation, why});
    }
};

Jet random_jet(std::mt19937_64& rng, int n, const Weights& w, long max_deg, int terms) {
    std::vector<Term> ts;
    for (int c = 0; c < terms; ++c) {
        std::vector<int> e(static_cast<size_t>(n), 0);
        long deg = 0;
        int len = static_cast<int>(rng() % 4);
        for (int q = 0; q < len; ++q) {
            int v = static_cast<int>(rng() % static_cast<unsigned>(n));
            if (deg + w[v] > max_deg) break;
            e[static_cast<size_t>(v)] += 1;
            deg += w[v];
        }
        Rat coef = random_rational(rng, 4, 3);
        if (coef != 0) ts.push_back({std::move(e), coef});
    }
    return Jet::from_terms(n, w, kOrderInf, std::move(ts));
}

PolyVectorField random_field(std::mt19937_64& rng, int n, const Weights& w, long max_deg) {
    PolyVectorField v;
    for (int j = 0; j < n; ++j) v.comp.push_back(random_jet(rng, n, w, max_deg, 3));
    return v;
}

// W_J on an arbitrary field family (right-nested), exact
PolyVectorField word_on_fields(const std::vector<PolyVectorField>& fields, const BracketWord& word) {
    PolyVectorField acc = fields[static_cast<size_t>(word.letters.back() - 1)];
    for (int q = word.length() - 2; q >= 0; --q)
        acc = lie_bracket(fields[static_cast<size_t>(word.letters[static_cast<size_t>(q)] - 1)], acc);
    return acc;
}

std::vector<BracketWord> all_words(int r, int len) {
    std::vector<BracketWord> out;
    std::vector<int> letters(static_cast<size_t>(len), 1);
    while (true) {
        out.push_back(BracketWord{letters});
        int pos = len - 1;
        while (pos >= 0 && letters[static_cast<size_t>(pos)] == r) {
            letters[static_cast<size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        letters[static_cast<size_t>(pos)] += 1;
    }
    return out;
}

long witt_dimension(int r, int k) {
    // sum over d | k of mu(d) r^{k/d}, divided by k
    auto mobius = [](int m) {
        int mu = 1;
        for (int p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) return 0;
                mu = -mu;
            }
        if (m > 1) mu = -mu;
        return mu;
    };
    long sum = 0;
    for (int d = 1; d <= k; ++d)
        if (k % d == 0) {
            long pw = 1;
            for (int q = 0; q < k / d; ++q) pw *= r;
            sum += mobius(d) * pw;
        }
    return sum / k;
}

}  // namespace

VerificationReport run_verification(const CCStructure& input, const VerifyOptions& opt) {
    VerificationReport rep;
    Runner run{rep};
    std::mt19937_64 rng(opt.seed);

    // ---- frame layer ----
    AdaptedFrame frame;
    bool frame_ok = false;
    run.exact("adapted frame selection is deterministic and adapted", "bracket filtration basis", [&](std::string& d) {
        frame = select_adapted_frame(input, opt.max_step);
        AdaptedFrame again = select_adapted_frame(input, opt.max_step);
        if (!(frame.words == again.words) || !(frame.weights == again.weights)) return false;

        // first dim L^j rows span L^j: the rank of all word values of length
        // <= j must match the number of selected words of weight <= j
        for (int len = 1; len <= frame.step; ++len) {
            std::vector<RatVec> vals;
            for (int l = 1; l <= len; ++l)
                for (const auto& word : all_words(input.r, l)) {
                    PolyVectorField acc = input.fields[static_cast<size_t>(word.letters.back() - 1)];
                    for (int q = word.length() - 2; q >= 0; --q)
                        acc = lie_bracket_honest(input.fields[static_cast<size_t>(word.letters[static_cast<size_t>(q)] - 1)], acc);
                    vals.push_back(acc.at_zero());
                }
            RatMat m(static_cast<int>(vals.size()), input.n);
            for (size_t i = 0; i < vals.size(); ++i)
                for (int j = 0; j < input.n; ++j) m.at(static_cast<int>(i), j) = vals[i][static_cast<size_t>(j)];
            int selected = 0;
            for (int i = 0; i < frame.n(); ++i)
                if (frame.weights[i] <= len) ++selected;
            if (m.rank() != selected) return false;
        }

        d = "weights (";
        for (int i = 0; i < frame.n(); ++i) d += (i ? "," : "") + std::to_string(frame.weights[i]);
        d += ")";
        frame_ok = true;
        return true;
    });
    if (!frame_ok) return rep;

    const int s = frame.step;
    const int n = input.n, r = input.r;
    const int order = opt.order > 0 ? opt.order : 2 * s;
    const Weights& w = frame.weights;

    run.exact("dim L^1 = r", "first filtration layer", [&](std::string&) {
        int ones = 0;
        for (int i = 0; i < frame.n(); ++i)
            if (frame.weights[i] == 1) ++ones;
        return ones == r;
    });

    run.exact("lie bracket antisymmetry and Jacobi identity", "commutator algebra", [&](std::string&) {
        for (int c = 0; c < 8; ++c) {
            PolyVectorField a = random_field(rng, n, w, s + 1);
            PolyVectorField b = random_field(rng, n, w, s + 1);
            PolyVectorField cc = random_field(rng, n, w, s + 1);
            if (!(lie_bracket(a, b) == -lie_bracket(b, a))) return false;
            PolyVectorField jac = lie_bracket(a, lie_bracket(b, cc)) + lie_bracket(b, lie_bracket(cc, a)) +
                                  lie_bracket(cc, lie_bracket(a, b));
            if (!jac.is_zero()) return false;
        }
        return true;
    });

    run.exact("anisotropic dilations form a group action", "dilation group law", [&](std::string&) {
        for (int c = 0; c < 8; ++c) {
            RatVec x;
            for (int j = 0; j < n; ++j) x.push_back(random_rational(rng, 5, 4));
            Rat lam = Rat(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 5));
            Rat mu = Rat(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 5));
            if (dilate_point(dilate_point(x, lam, w), mu, w) != dilate_point(x, lam * mu, w)) return false;
            PolyVectorField v = random_field(rng, n, w, s);
            PolyVectorField two = pushforward_dilation(pushforward_dilation(v, lam, w), mu, w);
            if (!(two == pushforward_dilation(v, lam * mu, w))) return false;
        }
        return true;
    });

    run.numeric("pseudo-norm is homogeneous of degree one", "anisotropic norm", opt.tol, [&](std::string&) {
        double res = 0;
        for (int c = 0; c < 16; ++c) {
            std::vector<double> x;
            for (int j = 0; j < n; ++j) x.push_back(((rng() % 2000) / 1000.0) - 1.0);
            double lam = 0.1 + (rng() % 1000) / 250.0;
            res = std::max(res, std::abs(anorm(dilate_point(x, lam, w), w) - lam * anorm(x, w)));
        }
        return res;
    });

    // ---- exponential coordinates ----
    CCStructure xexp;
    ExponentialChart chart;
    bool exp_ok = false;
    run.exact("exponential chart and coordinates", "first-kind exponential chart", [&](std::string& d) {
        chart = build_exponential_chart(input, frame, order);
        xexp = to_exponential_coordinates(input, frame, order);
        d = "order " + std::to_string(order);
        exp_ok = true;
        return true;
    });
    if (!exp_ok) return rep;

    run.exact("chart round-trip: phi_inv after phi is the identity", "series inversion", [&](std::string&) {
        for (int j = 0; j < n; ++j) {
            Jet comp = compose_series(chart.phi_inv.comps[static_cast<size_t>(j)], chart.phi, false);
            Jet id = Jet::variable(j, n, w, comp.order());
            if (!(comp == id)) return false;
        }
        return true;
    });

    run.exact("exponential coordinates normalize a_ij(0)", "adapted evaluation at the base point", [&](std::string&) {
        for (int i = 0; i < r; ++i) {
            RatVec v = xexp.fields[static_cast<size_t>(i)].at_zero();
            for (int j = 0; j < n; ++j)
                if (v[static_cast<size_t>(j)] != Rat(i == j ? 1 : 0)) return false;
        }
        return true;
    });

    DecomposedStructure dec;
    bool dec_ok = false;
    run.exact("decomposition clauses (i)-(iv) certified", "graded principal part plus remainder", [&](std::string&) {
        dec = decompose_graded(xexp, frame);
        dec_ok = true;
        return true;
    });
    if (!dec_ok) return rep;

    NilpotentStructure ns;
    bool ns_ok = false;
    run.exact("nilpotent approximation constructed", "homogeneous principal fields", [&](std::string&) {
        ns = nilpotent_approximation(dec);
        ns_ok = true;
        return true;
    });
    if (!ns_ok) return rep;

    run.exact("nilpotent generators are homogeneous of degree one (symbolic lambda)", "dilation homogeneity",
              [&](std::string&) {
                  for (const auto& f : ns.fields_inf)
                      if (!is_delta_homogeneous(f, w, 1)) return false;
                  Rat lam(5, 3);
                  for (const auto& f : ns.fields_inf)
                      if (!(pushforward_dilation(f, lam, w) == f.scaled(lam))) return false;
                  return true;
              });

    run.exact("bracket words of length step+1 vanish on the nilpotent generators", "nilpotency beyond the step",
              [&](std::string&) {
                  for (const auto& word : all_words(r, s + 1))
                      if (!word_on_fields(ns.fields_inf, word).is_zero()) return false;
                  return true;
              });

    run.exact("nilpotent frame determinant equals det of the basis at 0", "constant frame volume", [&](std::string& d) {
        Rat expected = xexp.frame->basis_at_zero.det();
        d = "det = " + rat_str(ns.frame_det);
        return ns.frame_det == expected && ns.frame_det != 0;
    });

    run.exact("identity chart for the nilpotent structure", "coordinates are their own exponential chart",
              [&](std::string&) {
                  CCStructure xinf = ns.as_structure();
                  ExponentialChart c2 = build_exponential_chart(xinf, *xinf.frame, order);
                  return c2.phi.is_identity() && c2.phi_inv.is_identity();
              });

    run.exact("rescaled bracket words: graded part matches, lower terms absent", "convergence of rescaled commutators",
              [&](std::string& d) {
                  int tested = 0, skipped = 0;
                  for (int len = 1; len <= s; ++len) {
                      for (const auto& word : all_words(r, len)) {
                          PolyVectorField yj = xexp.fields[static_cast<size_t>(word.letters.back() - 1)];
                          for (int q = word.length() - 2; q >= 0; --q)
                              yj = lie_bracket_honest(xexp.fields[static_cast<size_t>(word.letters[static_cast<size_t>(q)] - 1)], yj);
                          long need = 0;
                          for (int j = 0; j < n; ++j) need = std::max<long>(need, w[j] - len);
                          if (yj.order() < need) {
                              ++skipped;
                              continue;
                          }
                          PolyVectorField yinf = word_on_fields(ns.fields_inf, word);
                          for (int j = 0; j < n; ++j) {
                              const long target = w[j] - len;
                              std::vector<Term> graded;
                              for (const auto& t : yj.comp[static_cast<size_t>(j)].terms()) {
                                  long deg = w.wdeg(t.exp);
                                  if (deg < target) return false;  // a positive lambda power survives
                                  if (deg == target) graded.push_back(t);
                              }
                              Jet g = Jet::from_terms(n, w, yinf.order(), std::move(graded));
                              if (!(g == yinf.comp[static_cast<size_t>(j)])) return false;
                          }
                          ++tested;
                      }
                  }
                  d = std::to_string(tested) + " words tested, " + std::to_string(skipped) + " beyond the data order";
                  return tested > 0;
              });

    run.exact("rescaling agrees with the dilation pushforward route", "two routes to Y^lambda", [&](std::string&) {
        for (const Rat& lam : {Rat(2), Rat(1, 3), Rat(7, 5)}) {
            std::vector<PolyVectorField> resc = rescale_structure(dec, lam);
            for (int i = 0; i < r; ++i) {
                PolyVectorField other = pushforward_dilation(xexp.fields[static_cast<size_t>(i)], lam, w).scaled(1 / lam);
                if (!(resc[static_cast<size_t>(i)] == other)) return false;
            }
        }
        return true;
    });

    run.exact("rescaled error terms carry strictly negative lambda powers", "error part of Y^lambda", [&](std::string&) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < n; ++j)
                for (const auto& t : dec.rjet[static_cast<size_t>(i)][static_cast<size_t>(j)].terms())
                    if (w[j] - 1 - w.wdeg(t.exp) >= 0) return false;
        return true;
    });

    run.exact("nilpotent approximation is idempotent", "fixed point of the approximation", [&](std::string&) {
        CCStructure again = ns.as_structure();
        CCStructure exp2 = to_exponential_coordinates(again, *again.frame, order);
        DecomposedStructure dec2 = decompose_graded(exp2, *again.frame);
        NilpotentStructure ns2 = nilpotent_approximation(dec2);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < n; ++j) {
                if (!(ns2.fields_inf[static_cast<size_t>(i)].comp[static_cast<size_t>(j)] ==
                      ns.fields_inf[static_cast<size_t>(i)].comp[static_cast<size_t>(j)]))
                    return false;
                if (!dec2.rjet[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero()) return false;
            }
        }
        return true;
    });

    // ---- free Carnot lifting ----
    std::shared_ptr<const HallBasis> hb;
    LiftedStructure lift;
    bool lift_ok = false;
    if (r >= 2) {
        run.exact("free Lie layer dimensions match the Witt formula", "graded dimensions of the free algebra",
                  [&](std::string& d) {
                      hb = HallBasis::build(r, s);
                      for (int k = 1; k <= s; ++k)
                          if (hb->layer_sizes()[static_cast<size_t>(k - 1)] != witt_dimension(r, k)) return false;
                      d = "dim F = " + std::to_string(hb->dim());
                      return true;
                  });
        if (hb) {
            run.exact("BCH neutral element and inverses", "group law on the free algebra", [&](std::string&) {
                for (int c = 0; c < 6; ++c) {
                    FreeLieElement a = FreeLieElement::zero(hb);
                    for (auto& x : a.coef) x = random_rational(rng, 4, 3);
                    FreeLieElement z = FreeLieElement::zero(hb);
                    if (!(bch(a, z) == a) || !(bch(z, a) == a)) return false;
                    if (!bch(a, -a).is_zero() || !bch(-a, a).is_zero()) return false;
                }
                return true;
            });
            run.exact("BCH associativity", "associativity of the truncated series", [&](std::string&) {
                for (int c = 0; c < 5; ++c) {
                    FreeLieElement a = FreeLieElement::zero(hb), b = FreeLieElement::zero(hb), cc = FreeLieElement::zero(hb);
                    for (auto& x : a.coef) x = random_rational(rng, 3, 2);
                    for (auto& x : b.coef) x = random_rational(rng, 3, 2);
                    for (auto& x : cc.coef) x = random_rational(rng, 3, 2);
                    if (!(bch(bch(a, b), cc) == bch(a, bch(b, cc)))) return false;
                }
                return true;
            });
            run.exact("group dilations are BCH automorphisms", "dilations of the free group", [&](std::string&) {
                Rat lam(3, 2);
                for (int c = 0; c < 5; ++c) {
                    FreeLieElement a = FreeLieElement::zero(hb), b = FreeLieElement::zero(hb);
                    for (auto& x : a.coef) x = random_rational(rng, 3, 2);
                    for (auto& x : b.coef) x = random_rational(rng, 3, 2);
                    if (!(group_dilate(bch(a, b), lam) == bch(group_dilate(a, lam), group_dilate(b, lam))))
                        return false;
                }
                return true;
            });
            run.exact("psi is a bracket homomorphism onto the nilpotent algebra", "lifting homomorphism",
                      [&](std::string&) {
                          lift = build_psi(hb, ns);
                          lift_ok = true;
                          return true;
                      });
        }
    } else {
        run.skipped("free Lie layer dimensions match the Witt formula", "graded dimensions of the free algebra",
                    "rank < 2");
    }

    if (lift_ok) {
        run.exact("right action composes through the group law", "action associativity", [&](std::string&) {
            for (int c = 0; c < 4; ++c) {
                FreeLieElement f = FreeLieElement::zero(hb), g = FreeLieElement::zero(hb);
                for (auto& x : f.coef) x = random_rational(rng, 2, 2);
                for (auto& x : g.coef) x = random_rational(rng, 2, 2);
                RatVec x0;
                for (int j = 0; j < n; ++j) x0.push_back(random_rational(rng, 2, 3));
                if (group_action(group_action(x0, f, lift), g, lift) != group_action(x0, bch(f, g), lift))
                    return false;
            }
            return true;
        });

        run.exact("projection intertwines generator fields with the nilpotent generators",
                  "differential of the projection", [&](std::string&) {
                      // d(pi)(c) . G_i(c) = Y_i^inf(pi(c)) as polynomials in c
                      const int nf = lift.dim_f();
                      for (int i = 0; i < r; ++i) {
                          for (int j = 0; j < n; ++j) {
                              Jet lhs(nf, lift.f_weights, kOrderInf);
                              for (int m = 0; m < nf; ++m) {
                                  Jet dj = lift.pi_map[static_cast<size_t>(j)].derivative(m);
                                  lhs = add_mixed(lhs, mul_mixed(dj, lift.lift_fields[static_cast<size_t>(i)].comp[static_cast<size_t>(m)]));
                              }
                              JetMap pim;
                              pim.comps = lift.pi_map;
                              Jet rhs = compose_series(ns.fields_inf[static_cast<size_t>(i)].comp[static_cast<size_t>(j)], pim, true);
                              if (!(lhs == rhs)) return false;
                          }
                      }
                      return true;
                  });

        run.exact("projection commutes with dilations", "equivariance of the projection", [&](std::string&) {
            // symbolic: pi_j is delta-homogeneous of degree w_j in the layer grading
            for (int j = 0; j < n; ++j)
                for (const auto& t : lift.pi_map[static_cast<size_t>(j)].terms())
                    if (lift.f_weights.wdeg(t.exp) != w[j]) return false;
            Rat lam(7, 4);
            for (int c = 0; c < 4; ++c) {
                FreeLieElement f = FreeLieElement::zero(hb);
                for (auto& x : f.coef) x = random_rational(rng, 2, 2);
                if (project_pi(group_dilate(f, lam), lift) != dilate_point(project_pi(f, lift), lam, w))
                    return false;
            }
            return true;
        });

        run.exact("dilated action identity on first-layer elements", "homogeneity of generator flows",
                  [&](std::string&) {
                      Rat lam(5, 2);
                      for (int c = 0; c < 4; ++c) {
                          FreeLieElement a = FreeLieElement::zero(hb);
                          for (int i = 0; i < r; ++i) a.coef[static_cast<size_t>(i)] = random_rational(rng, 2, 2);
                          RatVec x0;
                          for (int j = 0; j < n; ++j) x0.push_back(random_rational(rng, 2, 3));
                          RatVec left = group_action(dilate_point(x0, lam, w), a.scaled(lam), lift);
                          RatVec right = dilate_point(group_action(x0, a, lift), lam, w);
                          if (left != right) return false;
                      }
                      return true;
                  });

        run.exact("group generated by first-layer exponentials", "constructive generation witness", [&](std::string& d) {
            int factors = 0;
            for (int k = 0; k < hb->dim(); ++k) {
                FreeLieElement e = FreeLieElement::zero(hb);
                e.coef[static_cast<size_t>(k)] = Rat(3, 2);
                auto wit = layer_one_factorization(e);
                factors = std::max(factors, static_cast<int>(wit.size()));
                if (!(product_of_exponentials(hb, wit) == e)) return false;
            }
            for (int c = 0; c < 3; ++c) {
                FreeLieElement f = FreeLieElement::zero(hb);
                for (auto& x : f.coef) x = random_rational(rng, 2, 2);
                auto wit = layer_one_factorization(f);
                if (!(product_of_exponentials(hb, wit) == f)) return false;
            }
            d = "longest witness: " + std::to_string(factors) + " factors";
            return true;
        });
    } else if (r >= 2) {
        run.skipped("right action composes through the group law", "action associativity", "lifting unavailable");
    }

    // ---- numeric curve layer ----
    if (opt.with_curves) {
        IntegrateOptions iopt;
        iopt.step = opt.rk4_step;
        CompiledFields full(dec.base.fields, w);
        CompiledFields inf_fields(ns.fields_inf, w);

        run.numeric("growth bound |gamma_j(t)| <= C t^{w_j} on a random arclength corpus", "anisotropic growth",
                    1.0, [&](std::string& d) {
                        const int curves = 30;
                        std::vector<double> samples;
                        for (int q = 1; q <= 1000; ++q) samples.push_back(q / 1000.0);
                        std::vector<HorizontalCurve> cs;
                        double cmax = 0;
                        for (int c = 0; c < curves; ++c) {
                            Control h = random_arclength_control(rng, r, 1.0, 4);
                            std::vector<double> x0(static_cast<size_t>(n), 0.0);
                            cs.push_back(integrate(full, h, x0, iopt, samples));
                            for (int j = 0; j < n; ++j)
                                cmax = std::max(cmax, std::abs(cs.back().states.back()[static_cast<size_t>(j)]));
                        }
                        const double big_c = 2.0 * cmax;
                        d = "C = " + std::to_string(big_c);
                        double worst = 0;
                        for (const auto& curve : cs)
                            for (size_t q = 0; q < curve.times.size(); ++q) {
                                double t = curve.times[q];
                                for (int j = 0; j < n; ++j)
                                    worst = std::max(worst, std::abs(curve.states[q][static_cast<size_t>(j)]) /
                                                                (big_c * std::pow(t, w[j])));
                            }
                        return worst;  // pass iff <= 1 (argument tol)
                    });

        run.numeric("blow-up of the rescaled curve matches the dilated curve", "rescaling identity for curves",
                    10 * opt.tol, [&](std::string&) {
                        Control h = random_arclength_control(rng, r, 1.0, 3);
                        const double lam = 2.0;
                        std::vector<double> base_grid = uniform_grid(0.0, 1.0, 64);
                        std::vector<double> x0(static_cast<size_t>(n), 0.0);
                        HorizontalCurve gamma = integrate(full, h, x0, iopt, base_grid);
                        HorizontalCurve dilated = dilate_curve(gamma, lam, w);
                        Control hl = h.reparametrized(0.0, 1.0 / lam, 0.0, lam);
                        CompiledFields resc(dec.base.fields, w, lam);
                        HorizontalCurve direct = integrate(resc, hl, x0, iopt, dilated.times);
                        return sup_distance(direct, dilated);
                    });

        run.numeric("length rescales exactly", "length under reparametrization", 1e-15, [&](std::string&) {
            Control h = random_arclength_control(rng, r, 1.0, 4);
            const double lam = 2.0;
            Control hl = h.reparametrized(0.0, 1.0 / lam, 0.0, lam);
            return std::abs(hl.length() - lam * h.length());
        });

        run.numeric("two-stage blow-up composition", "iterated blow-up", 1e-4, [&](std::string&) {
            Control h = random_arclength_control(rng, r, 1.0, 3);
            const double eta = 0.1, xi = 0.1;
            HorizontalCurve two_outer = blowup(dec, h, 0.0, eta, 0.0, 1.0, iopt, 100);
            HorizontalCurve inner = dilate_curve(two_outer, 1.0 / xi, w);
            // restrict the dilated curve to the common window [0, 1]
            HorizontalCurve inner_window;
            inner_window.control = inner.control;
            for (size_t q = 0; q < inner.times.size(); ++q)
                if (inner.times[q] <= 1.0 + 1e-9) {
                    inner_window.times.push_back(inner.times[q]);
                    inner_window.states.push_back(inner.states[q]);
                }
            HorizontalCurve single = blowup(dec, h, 0.0, eta * xi, 0.0, 1.0, iopt,
                                            static_cast<int>(inner_window.times.size()) - 1);
            return sup_distance(inner_window, single);
        });

        if (lift_ok) {
            run.numeric("lift projects onto the curve downstairs", "lift consistency", 1e-5, [&](std::string& d) {
                double worst = 0;
                for (int c = 0; c < 3; ++c) {
                    Control h = random_arclength_control(rng, r, 1.0, 4);
                    LiftResult lr = lift_curve(h, lift, iopt, 100, 1e-5);
                    worst = std::max(worst, lr.projection_defect);
                    if (lr.lift.control.length() != h.length()) return 1.0;
                }
                d = "corpus of 3 lifts";
                return worst;
            });

            run.numeric("constant-control lifts project to horizontal lines", "lines lift to lines", opt.tol,
                        [&](std::string&) {
                            std::vector<double> dir(static_cast<size_t>(r), 0.0);
                            dir[0] = 0.6;
                            if (r > 1) dir[1] = 0.8;
                            Control h{r, {0.0, 1.0}, {dir}, false};
                            LiftResult lr = lift_curve(h, lift, iopt, 50, 1e-5);
                            // kappa(t) = t W for W in the first layer
                            double worst = 0;
                            for (size_t q = 0; q < lr.lift.times.size(); ++q) {
                                double t = lr.lift.times[q];
                                for (int m = 0; m < lift.dim_f(); ++m) {
                                    double expect = m < r ? t * dir[static_cast<size_t>(m)] : 0.0;
                                    worst = std::max(worst, std::abs(lr.lift.states[q][static_cast<size_t>(m)] - expect));
                                }
                            }
                            LineCheckResult line = is_horizontal_line(lr.projected.states.back(), ns, opt.tol);
                            if (!line.line) return 1.0;
                            return worst;
                        });
        }
    }

    return rep;
}

Json report_to_json(const VerificationReport& rep) {
    Json v;
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["status"] = c.status;
        cj["kind"] = c.exact ? "exact" : "numeric";
        cj["residual"] = c.residual;
        cj["citation"] = c.citation;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    v["checks"] = std::move(checks);
    v["passed"] = rep.all_passed();
    return v;
}

std::string report_table(const VerificationReport& rep) {
    std::ostringstream os;
    for (const auto& c : rep.checks) {
        os << (c.status == "pass" ? "[PASS]" : c.status == "fail" ? "[FAIL]" : "[SKIP]") << " " << c.name;
        if (!c.exact) {
            os << " (residual " << c.residual << ")";
        }
        if (!c.detail.empty()) os << " -- " << c.detail;
        os << "\n";
    }
    os << (rep.all_passed() ? "all checks passed" : "CHECKS FAILED") << "\n";
    return os.str();
}

}  // namespace cct
