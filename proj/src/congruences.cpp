#include "qlab/congruences.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "qlab/eta_modularity.hpp"
#include "qlab/newman.hpp"
#include "qlab/number_theory.hpp"

namespace qlab {
namespace {

using i64 = std::int64_t;

int symbol(i64 a, i64 p) { return p == 2 ? kronecker(a, 2) : legendre(a, p); }

std::string str(i64 x) { return std::to_string(x); }

std::string series_name(const BipartitionParams& s) { return "B_{" + str(s.u) + "," + str(s.v) + "}"; }

std::string progression(i64 M, i64 R)
{
    std::string s = M == 1 ? "n" : str(M) + "n";
    return R == 0 ? s : s + "+" + str(R);
}

Hypothesis decided(std::string text, bool holds) { return Hypothesis{std::move(text), holds, -1}; }

Hypothesis seed(const BipartitionParams& s, i64 m, i64 index)
{
    return Hypothesis{series_name(s) + "(" + str(index) + ") = 0 (mod " + str(m) + ")", std::nullopt, index};
}

// Instance whose formula is not defined for these parameters; always SKIP.
FamilyInstance undefined(nlohmann::json params, Hypothesis why)
{
    FamilyInstance inst;
    inst.label = params.dump();
    inst.params = std::move(params);
    inst.hypotheses.push_back(std::move(why));
    return inst;
}

bool residue_in(i64 p, i64 mod, const std::vector<i64>& classes)
{
    return std::find(classes.begin(), classes.end(), floor_mod(p, mod)) != classes.end();
}

std::string class_text(i64 mod, const std::vector<i64>& classes)
{
    std::string s = "{";
    for (i64 c : classes) s += (s.size() > 1 ? "," : "") + str(c);
    return s + "} (mod " + str(mod) + ")";
}

std::string residue_text(i64 p, i64 mod, std::vector<i64> classes)
{
    return "p = " + str(p) + " prime in " + class_text(mod, classes);
}

FamilyInstance vanishing(std::string label, nlohmann::json params, i64 M, i64 R)
{
    FamilyInstance inst;
    inst.label = std::move(label);
    inst.params = std::move(params);
    inst.params["M"] = M;
    inst.params["R"] = R;
    inst.M = M;
    inst.R = R;
    return inst;
}

FamilyInstance proportional(std::string label, nlohmann::json params, i64 M, i64 R, i64 M2, i64 R2, i64 mult)
{
    FamilyInstance inst = vanishing(std::move(label), std::move(params), M, R);
    inst.kind = RelationKind::proportional;
    inst.M2 = M2;
    inst.R2 = R2;
    inst.multiplier = mult;
    inst.params["M2"] = M2;
    inst.params["R2"] = R2;
    inst.params["multiplier"] = mult;
    return inst;
}

void exclude_multiples(FamilyInstance& inst, i64 p, i64 a, i64 b)
{
    inst.admissible = [=](i64 n) { return floor_mod(a * n + b, p) != 0; };
    inst.admissible_text = "p = " + str(p) + " does not divide " + progression(a, b);
}

// thm1.2 families: B(Q p^2 n + (Q p (c j + p) - 1)/c) with Q = p_1^2 ... p_k^2.
struct ModThreeSeries {
    BipartitionParams series;
    i64 c;
    i64 discriminant;
    i64 class_mod;
    std::vector<i64> classes;
};

const ModThreeSeries part_i{{3, 7}, 3, -7, 3, {0, 2}};
const ModThreeSeries part_ii{{3, 5}, 4, -5, 4, {3}};
const ModThreeSeries part_iii{{3, 2}, 8, -2, 8, {0, 2, 3, 4, 5, 6, 7}};

std::function<std::vector<FamilyInstance>(const FamilyGrid&)> thm12(const ModThreeSeries& t)
{
    return [t](const FamilyGrid& g) {
        std::vector<FamilyInstance> out;
        std::vector<std::vector<i64>> tuples;
        for (i64 k : g.exponents) {
            std::vector<std::vector<i64>> level{{}};
            for (i64 i = 0; i <= k; ++i) {
                std::vector<std::vector<i64>> next;
                for (const auto& tup : level)
                    for (i64 p : g.primes) {
                        auto e = tup;
                        e.push_back(p);
                        next.push_back(e);
                    }
                level = std::move(next);
            }
            tuples.insert(tuples.end(), level.begin(), level.end());
        }
        for (const auto& ps : tuples) {
            nlohmann::json base{{"primes", ps}, {"k", ps.size() - 1}};
            bool in_class = true;
            for (i64 p : ps) in_class = in_class && is_prime(p) && residue_in(p, t.class_mod, t.classes);
            Hypothesis cls = decided("every p_i prime in " + class_text(t.class_mod, t.classes), in_class);
            if (!in_class) {
                out.push_back(undefined(base, cls));
                continue;
            }
            i64 Q = 1;
            for (std::size_t i = 0; i + 1 < ps.size(); ++i) Q *= ps[i] * ps[i];
            const i64 p = ps.back();
            for (i64 j = 1; j < p; ++j) {
                nlohmann::json params = base;
                params["j"] = j;
                i64 num = Q * p * (t.c * j + p) - 1;
                if (num % t.c != 0) {
                    out.push_back(undefined(params, decided("(Q p (" + str(t.c) + "j+p) - 1)/" + str(t.c) +
                                                                " integral",
                                                            false)));
                    continue;
                }
                FamilyInstance inst = vanishing(params.dump(), params, Q * p * p, num / t.c);
                inst.hypotheses.push_back(cls);
                inst.hypotheses.push_back(decided("p_{k+1} does not divide j", j % p != 0));
                out.push_back(std::move(inst));
            }
        }
        return out;
    };
}

std::function<std::vector<FamilyInstance>(const FamilyGrid&)> cor13(const ModThreeSeries& t,
                                                                  std::vector<i64> classes)
{
    return [t, classes](const FamilyGrid& g) {
        std::vector<FamilyInstance> out;
        for (i64 p : g.primes) {
            Hypothesis cls = decided(residue_text(p, t.class_mod, classes), is_prime(p) && residue_in(p, t.class_mod, classes));
            for (i64 k : g.exponents) {
                if (!*cls.holds) {
                    out.push_back(undefined({{"p", p}, {"k", k}}, cls));
                    continue;
                }
                for (i64 j = 1; j < p; ++j) {
                    nlohmann::json params{{"p", p}, {"k", k}, {"j", j}};
                    i64 M = ipow(p, 2 * k + 2);
                    FamilyInstance inst =
                        vanishing(params.dump(), params, M, ipow(p, 2 * k + 1) * j + (M - 1) / t.c);
                    inst.hypotheses.push_back(cls);
                    inst.hypotheses.push_back(decided("p does not divide j", j % p != 0));
                    out.push_back(std::move(inst));
                }
            }
        }
        return out;
    };
}

std::function<std::vector<FamilyInstance>(const FamilyGrid&)> thm14(const ModThreeSeries& t, i64 class_mod)
{
    return [t, class_mod](const FamilyGrid& g) {
        std::vector<FamilyInstance> out;
        for (i64 p : g.primes) {
            Hypothesis cls = decided(residue_text(p, class_mod, {1}), is_prime(p) && p > 2 && p % class_mod == 1);
            for (i64 a : g.exponents) {
                nlohmann::json params{{"p", p}, {"alpha", a}};
                if (!*cls.holds) {
                    out.push_back(undefined(params, cls));
                    continue;
                }
                i64 M = ipow(p, 2 * a + 1);
                FamilyInstance inst = vanishing(params.dump(), params, M, (M - 1) / t.c);
                inst.hypotheses.push_back(cls);
                inst.hypotheses.push_back(seed(t.series, 3, (p - 1) / t.c));
                exclude_multiples(inst, p, t.c, 1);
                out.push_back(std::move(inst));
            }
        }
        return out;
    };
}

i64 part_iii_t(i64 p) { return floor_mod(p, 8); }

std::function<std::vector<FamilyInstance>(const FamilyGrid&)> thm15(const ModThreeSeries& t,
                                                                  std::vector<i64> classes)
{
    return [t, classes](const FamilyGrid& g) {
        std::vector<FamilyInstance> out;
        for (i64 p : g.primes) {
            Hypothesis cls = decided(residue_text(p, t.class_mod, classes), is_prime(p) && residue_in(p, t.class_mod, classes));
            const i64 tt = t.c == 3 ? 2 : t.c == 4 ? 3 : part_iii_t(p);
            for (i64 k : g.exponents) {
                if (!*cls.holds) {
                    out.push_back(undefined({{"p", p}, {"k", k}}, cls));
                    continue;
                }
                const i64 pk = ipow(p, k), mult = -symbol(t.discriminant, p);
                for (i64 r = 0; r < pk; ++r) {
                    if ((t.c * r + tt) % p != 0) continue;
                    nlohmann::json params{{"p", p}, {"k", k}, {"r", r}, {"t", tt}};
                    FamilyInstance inst =
                        proportional(params.dump(), params, pk * p, p * r + (tt * p - 1) / t.c, pk / p,
                                     (t.c * r + tt - p) / (t.c * p), mult);
                    inst.hypotheses.push_back(cls);
                    inst.hypotheses.push_back(
                        decided("p divides " + str(t.c) + "r+" + str(tt), (t.c * r + tt) % p == 0));
                    inst.n_min = 1;
                    out.push_back(std::move(inst));
                }
            }
        }
        return out;
    };
}

std::function<std::vector<FamilyInstance>(const FamilyGrid&)> cor16(const ModThreeSeries& t,
                                                                  std::vector<i64> classes)
{
    return [t, classes](const FamilyGrid& g) {
        std::vector<FamilyInstance> out;
        for (i64 p : g.primes) {
            Hypothesis cls = decided(residue_text(p, t.class_mod, classes), is_prime(p) && residue_in(p, t.class_mod, classes));
            for (i64 k : g.exponents) {
                nlohmann::json params{{"p", p}, {"k", k}};
                if (!*cls.holds) {
                    out.push_back(undefined(params, cls));
                    continue;
                }
                const i64 chi = -symbol(t.discriminant, p), M = ipow(p, 2 * k);
                const i64 mult = k % 2 ? chi : chi * chi;
                FamilyInstance inst = proportional(params.dump(), params, M, (M - 1) / t.c, 1, 0, mult);
                inst.hypotheses.push_back(cls);
                inst.n_min = 1;
                if (t.c == 8) {
                    FamilyInstance alt = proportional("offset (p^{2k}-1)/4", params, M, (M - 1) / 4, 1, 0, mult);
                    alt.n_min = 1;
                    inst.alternates.push_back(std::move(alt));
                }
                out.push_back(std::move(inst));
            }
        }
        return out;
    };
}

std::function<std::vector<FamilyInstance>(const FamilyGrid&)> thm17(i64 u, std::optional<i64> alt_offset)
{
    return [u, alt_offset](const FamilyGrid& g) {
        std::vector<FamilyInstance> out;
        const BipartitionParams s{u, 2};
        for (i64 p : g.primes) {
            Hypothesis cls = decided(residue_text(p, 24, {1}), is_prime(p) && p % 24 == 1);
            for (i64 a : g.exponents) {
                nlohmann::json params{{"p", p}, {"alpha", a}};
                if (!*cls.holds) {
                    out.push_back(undefined(params, cls));
                    continue;
                }
                i64 M = ipow(p, 2 * a + 1);
                FamilyInstance inst = vanishing(params.dump(), params, M, u * (M - 1) / 24);
                inst.hypotheses.push_back(cls);
                inst.hypotheses.push_back(seed(s, u, u * (p - 1) / 24));
                exclude_multiples(inst, p, 24, u);
                if (alt_offset) {
                    FamilyInstance alt = inst;
                    alt.label = "p does not divide 24n+" + str(*alt_offset);
                    alt.alternates.clear();
                    exclude_multiples(alt, p, 24, *alt_offset);
                    inst.alternates.push_back(std::move(alt));
                }
                out.push_back(std::move(inst));
            }
        }
        return out;
    };
}

// thm1.8 to thm1.10 families: B(M n + R) = 0 (mod 2) gated on the parity of the
// Newman constant w(p) of (q;q)^r (q^Q;q^Q)^s.
struct ModTwoSeries {
    i64 q, r, s;
    i64 num, den;
    std::string w_name;
    // -A n - B + C (p^2 - 1)/D
    i64 A, B, C, D;
};

const ModTwoSeries w_one{3, 2, 1, 5, 24, "w_1", 6, 1, 1, 4};
const ModTwoSeries w_two{3, 6, 1, 3, 8, "w_2", 6, 2, 1, 4};
const ModTwoSeries w_three{5, 2, 1, 7, 24, "w_3", 10, 2, 11, 12};

i64 newman_w(const ModTwoSeries& t, i64 p)
{
    NewmanIIParams np{t.q, t.r, t.s, p};
    return newman2_gamma0_constant(np, np.delta());
}

std::function<std::vector<FamilyInstance>(const FamilyGrid&)> mod_two(const ModTwoSeries& t, char part)
{
    return [t, part](const FamilyGrid& g) {
        std::vector<FamilyInstance> out;
        for (i64 p : g.primes) {
            for (i64 k : g.exponents) {
                nlohmann::json params{{"p", p}, {"k", k}};
                if (!is_prime(p) || p < 5) {
                    out.push_back(undefined(params, decided("p >= 5 prime", false)));
                    continue;
                }
                const i64 w = newman_w(t, p);
                params[t.w_name] = w;
                const bool odd = floor_mod(w, 2) == 1;
                i64 M, R;
                if (part == 'i') {
                    M = ipow(p, 4 * k + 3);
                    R = t.num * (ipow(p, 4 * k + 4) - 1) / t.den;
                } else if (part == 'j') {
                    M = ipow(p, 6 * k + 5);
                    R = t.num * (ipow(p, 6 * k + 6) - 1) / t.den;
                } else {
                    M = ipow(p, 6 * k + 2);
                    R = t.num * (M - 1) / t.den;
                }
                FamilyInstance inst = vanishing(params.dump(), params, M, R);
                const std::string wt = t.w_name + "(" + str(p) + ") = " + str(w);
                inst.hypotheses.push_back(part == 'i' ? decided(wt + " even", !odd) : decided(wt + " odd", odd));
                if (part == 'k') {
                    const i64 c = t.C * (p * p - 1) / t.D - t.B, A = t.A;
                    inst.admissible = [=](i64 n) { return floor_mod(legendre(c - A * n, p) - w, 2) == 0; };
                    inst.admissible_text = t.w_name + "(p) = ((" + str(c) + "-" + str(A) + "n)/p) (mod 2)";
                } else {
                    exclude_multiples(inst, p, 1, 0);
                }
                out.push_back(std::move(inst));
            }
        }
        return out;
    };
}

std::vector<FamilyInstance> remark_family(const FamilyGrid& g)
{
    std::vector<FamilyInstance> out;
    for (i64 p : g.primes) {
        if (p != 7) {
            out.push_back(undefined({{"p", p}}, decided("p = 7", false)));
            continue;
        }
        const i64 w = newman_w(w_one, 7);
        for (i64 r : {0, 1, 2, 4, 5, 6}) {
            nlohmann::json params{{"p", 7}, {"r", r}, {"w_1", w}};
            FamilyInstance inst = vanishing(params.dump(), params, 343, 49 * r + 10);
            inst.hypotheses.push_back(decided("w_1(7) = " + str(w) + " odd", floor_mod(w, 2) == 1));
            out.push_back(std::move(inst));
        }
    }
    return out;
}

std::vector<i64> class_primes(i64 mod) { return primes_in_class_between(1, mod, 5, 500); }

std::vector<CongruenceFamily> make_families()
{
    std::vector<CongruenceFamily> f;
    const BipartitionParams b37{3, 7};

    f.push_back({"eq006", "B_{3,7}(4n+1) = -B_{3,7}(n) (mod 3)", b37, 3, 20000, {}, [](const FamilyGrid&) {
                     return std::vector<FamilyInstance>{proportional("", {}, 4, 1, 1, 0, -1)};
                 }});
    f.push_back({"eq006a", "B_{3,7}(4n+3) = 0 (mod 3)", b37, 3, 20000, {}, [](const FamilyGrid&) {
                     return std::vector<FamilyInstance>{vanishing("", {}, 4, 3)};
                 }});
    f.push_back({"eq005", "B_{3,7}(4^a n + (5*2^{2a-1}-1)/3) = 0 (mod 3)", b37, 3, 20000, {{}, {1, 2, 3}},
                 [](const FamilyGrid& g) {
                     std::vector<FamilyInstance> out;
                     for (i64 a : g.exponents) {
                         nlohmann::json params{{"alpha", a}};
                         out.push_back(vanishing(params.dump(), params, ipow(4, a), (5 * ipow(2, 2 * a - 1) - 1) / 3));
                     }
                     return out;
                 }});
    f.push_back({"eq007", "B_{3,11}(3^a n + (5*3^{a-1}-1)/2) = 0 (mod 11)", {3, 11}, 11, 20000, {{}, {2, 3}},
                 [](const FamilyGrid& g) {
                     std::vector<FamilyInstance> out;
                     for (i64 a : g.exponents) {
                         nlohmann::json params{{"alpha", a}};
                         out.push_back(vanishing(params.dump(), params, ipow(3, a), (5 * ipow(3, a - 1) - 1) / 2));
                     }
                     return out;
                 }});
    f.push_back({"eq001",
                 "B_{3,s}(p^{2a+1}n + (1+s)(p^{2a+2}-1)/24) = 0 (mod 3) for p not dividing n, "
                 "when the Legendre symbol (-s/p) is -1",
                 {3, 2}, 3, 20000, {{5, 7, 11, 13}, {0, 1}}, [](const FamilyGrid& g) {
                     std::vector<FamilyInstance> out;
                     for (i64 s : {2, 5, 7})
                         for (i64 p : g.primes)
                             for (i64 a : g.exponents) {
                                 nlohmann::json params{{"s", s}, {"p", p}, {"alpha", a}};
                                 if (!is_prime(p) || p < 5) {
                                     out.push_back(undefined(params, decided("p >= 5 prime", false)));
                                     out.back().series = BipartitionParams{3, s};
                                     continue;
                                 }
                                 const int sym = legendre(-s, p);
                                 FamilyInstance inst = vanishing(params.dump(), params, ipow(p, 2 * a + 1),
                                                                 (1 + s) * (ipow(p, 2 * a + 2) - 1) / 24);
                                 inst.series = BipartitionParams{3, s};
                                 inst.hypotheses.push_back(
                                     decided("(-" + str(s) + "/" + str(p) + ") = " + str(sym) + ", needs -1", sym == -1));
                                 exclude_multiples(inst, p, 1, 0);
                                 out.push_back(std::move(inst));
                             }
                     return out;
                 }});

    const std::vector<i64> grid_i{2, 5, 11}, grid_ii{3, 7, 11}, grid_iii{3, 5, 7, 11};
    f.push_back({"thm1.2i", "B_{3,7}(Q p^2 n + (Q p (3j+p) - 1)/3) = 0 (mod 3), Q = p_1^2...p_k^2, p_i != 1 (mod 3)",
                 b37, 3, 20000, {grid_i, {0, 1}}, thm12(part_i)});
    f.push_back({"thm1.2ii", "B_{3,5}(Q p^2 n + (Q p (4j+p) - 1)/4) = 0 (mod 3), Q = p_1^2...p_k^2, p_i = 3 (mod 4)",
                 {3, 5}, 3, 20000, {grid_ii, {0, 1}}, thm12(part_ii)});
    f.push_back({"thm1.2iii", "B_{3,2}(Q p^2 n + (Q p (8j+p) - 1)/8) = 0 (mod 3), Q = p_1^2...p_k^2, p_i != 1 (mod 8)",
                 {3, 2}, 3, 20000, {grid_iii, {0, 1}}, thm12(part_iii)});

    f.push_back({"cor1.3i", "B_{3,7}(p^{2k+2}n + p^{2k+1}j + (p^{2k+2}-1)/3) = 0 (mod 3), p = 2 (mod 3)", b37, 3,
                 20000, {grid_i, {0, 1}}, cor13(part_i, {2})});
    f.push_back({"cor1.3ii", "B_{3,5}(p^{2k+2}n + p^{2k+1}j + (p^{2k+2}-1)/4) = 0 (mod 3), p = 3 (mod 4)", {3, 5},
                 3, 20000, {grid_ii, {0, 1}}, cor13(part_ii, {3})});
    f.push_back({"cor1.3iii", "B_{3,2}(p^{2k+2}n + p^{2k+1}j + (p^{2k+2}-1)/8) = 0 (mod 3), p odd, p != 1 (mod 8)",
                 {3, 2}, 3, 20000, {grid_iii, {0, 1}}, cor13(part_iii, {3, 5, 7})});

    f.push_back({"thm1.4i", "B_{3,7}(p^{2a+1}n + (p^{2a+1}-1)/3) = 0 (mod 3) for p not dividing 3n+1, seeded by B_{3,7}((p-1)/3)",
                 b37, 3, 20000, {class_primes(6), {0, 1}}, thm14(part_i, 6)});
    f.push_back({"thm1.4ii", "B_{3,5}(p^{2a+1}n + (p^{2a+1}-1)/4) = 0 (mod 3) for p not dividing 4n+1, seeded by B_{3,5}((p-1)/4)",
                 {3, 5}, 3, 20000, {class_primes(4), {0, 1}}, thm14(part_ii, 4)});
    f.push_back({"thm1.4iii", "B_{3,2}(p^{2a+1}n + (p^{2a+1}-1)/8) = 0 (mod 3) for p not dividing 8n+1, seeded by B_{3,2}((p-1)/8)",
                 {3, 2}, 3, 20000, {class_primes(8), {0, 1}}, thm14(part_iii, 8)});

    const std::vector<i64> grid5_iii{3, 5, 11, 13};
    f.push_back({"thm1.5i", "B_{3,7}(p^{k+1}n + pr + (2p-1)/3) = -(-7/p) B_{3,7}(p^{k-1}n + (3r+2-p)/(3p)) (mod 3)",
                 b37, 3, 20000, {grid_i, {1, 2}}, thm15(part_i, {2})});
    f.push_back({"thm1.5ii", "B_{3,5}(p^{k+1}n + pr + (3p-1)/4) = -(-5/p) B_{3,5}(p^{k-1}n + (4r+3-p)/(4p)) (mod 3)",
                 {3, 5}, 3, 20000, {grid_ii, {1, 2}}, thm15(part_ii, {3})});
    f.push_back({"thm1.5iii", "B_{3,2}(p^{k+1}n + pr + (tp-1)/8) = -(-2/p) B_{3,2}(p^{k-1}n + (8r+t-p)/(8p)) (mod 3), t = p mod 8",
                 {3, 2}, 3, 20000, {grid5_iii, {1, 2}}, thm15(part_iii, {3, 5, 7})});

    f.push_back({"cor1.6i", "B_{3,7}(p^{2k}n + (p^{2k}-1)/3) = (-1)^k (-7/p)^k B_{3,7}(n) (mod 3)", b37, 3, 20000,
                 {grid_i, {1, 2}}, cor16(part_i, {2})});
    f.push_back({"cor1.6ii", "B_{3,5}(p^{2k}n + (p^{2k}-1)/4) = (-1)^k (-5/p)^k B_{3,5}(n) (mod 3)", {3, 5}, 3, 20000,
                 {grid_ii, {1, 2}}, cor16(part_ii, {3})});
    f.push_back({"cor1.6iii", "B_{3,2}(p^{2k}n + (p^{2k}-1)/8) = (-1)^k (-2/p)^k B_{3,2}(n) (mod 3)", {3, 2}, 3, 20000,
                 {grid5_iii, {1, 2}}, cor16(part_iii, {3, 5, 7})});

    f.push_back({"thm1.7i", "B_{7,2}(p^{2a+1}n + 7(p^{2a+1}-1)/24) = 0 (mod 7) for p not dividing 24n+7, seeded by B_{7,2}(7(p-1)/24)",
                 {7, 2}, 7, 200, {primes_in_class_between(1, 24, 5, 500), {0, 1}}, thm17(7, std::nullopt)});
    f.push_back({"thm1.7ii", "B_{11,2}(p^{2a+1}n + 11(p^{2a+1}-1)/24) = 0 (mod 11) for p not dividing 24n+11, seeded by B_{11,2}(11(p-1)/24)",
                 {11, 2}, 11, 200, {primes_in_class_between(1, 24, 5, 500), {0, 1}}, thm17(11, 1)});
    f.push_back({"thm1.7iii", "B_{13,2}(p^{2a+1}n + 13(p^{2a+1}-1)/24) = 0 (mod 13) for p not dividing 24n+13, seeded by B_{13,2}(13(p-1)/24)",
                 {13, 2}, 13, 200, {primes_in_class_between(1, 24, 5, 500), {0, 1}}, thm17(13, std::nullopt)});

    const FamilyGrid grid2{{5, 7, 11}, {0}};
    f.push_back({"thm1.8i", "B_{4,3}(p^{4k+3}n + 5(p^{4k+4}-1)/24) = 0 (mod 2) for p not dividing n, w_1(p) even",
                 {4, 3}, 2, 500, grid2, mod_two(w_one, 'i')});
    f.push_back({"thm1.8ii", "B_{4,3}(p^{6k+5}n + 5(p^{6k+6}-1)/24) = 0 (mod 2) for p not dividing n, w_1(p) odd",
                 {4, 3}, 2, 500, grid2, mod_two(w_one, 'j')});
    f.push_back({"thm1.8iii", "B_{4,3}(p^{6k+2}n + 5(p^{6k+2}-1)/24) = 0 (mod 2) when w_1(p) = ((-6n-1+(p^2-1)/4)/p) (mod 2), w_1(p) odd",
                 {4, 3}, 2, 500, grid2, mod_two(w_one, 'k')});
    f.push_back({"thm1.8-remark", "B_{4,3}(343n + 49r + 10) = 0 (mod 2) for r in {0,1,2,4,5,6}", {4, 3}, 2, 200,
                 {{7}, {}}, remark_family});
    f.push_back({"thm1.9i", "B_{8,3}(p^{4k+3}n + 3(p^{4k+4}-1)/8) = 0 (mod 2) for p not dividing n, w_2(p) even",
                 {8, 3}, 2, 500, grid2, mod_two(w_two, 'i')});
    f.push_back({"thm1.9ii", "B_{8,3}(p^{6k+5}n + 3(p^{6k+6}-1)/8) = 0 (mod 2) for p not dividing n, w_2(p) odd",
                 {8, 3}, 2, 500, grid2, mod_two(w_two, 'j')});
    f.push_back({"thm1.9iii", "B_{8,3}(p^{6k+2}n + 3(p^{6k+2}-1)/8) = 0 (mod 2) when w_2(p) = p^2((-6n-2+(p^2-1)/4)/p) (mod 2), w_2(p) odd",
                 {8, 3}, 2, 500, grid2, mod_two(w_two, 'k')});
    f.push_back({"thm1.10i", "B_{4,5}(p^{4k+3}n + 7(p^{4k+4}-1)/24) = 0 (mod 2) for p not dividing n, w_3(p) even",
                 {4, 5}, 2, 500, grid2, mod_two(w_three, 'i')});
    f.push_back({"thm1.10ii", "B_{4,5}(p^{6k+5}n + 7(p^{6k+6}-1)/24) = 0 (mod 2) for p not dividing n, w_3(p) odd",
                 {4, 5}, 2, 500, grid2, mod_two(w_three, 'j')});
    f.push_back({"thm1.10iii", "B_{4,5}(p^{6k+2}n + 7(p^{6k+2}-1)/24) = 0 (mod 2) when w_3(p) = ((-10n-2+11(p^2-1)/12)/p) (mod 2), w_3(p) odd",
                 {4, 5}, 2, 500, grid2, mod_two(w_three, 'k')});
    return f;
}

double elapsed_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct Evaluation {
    std::vector<HypothesisResult> results;
    bool all = true;
};

Evaluation evaluate(const FamilyInstance& inst, const QSeries& table)
{
    Evaluation e;
    for (const auto& h : inst.hypotheses) {
        if (h.holds) {
            e.results.push_back({h.text, *h.holds});
            e.all = e.all && *h.holds;
            continue;
        }
        const i64 v = table[h.seed_index];
        e.results.push_back({h.text + " [value " + str(v) + "]", v == 0});
        e.all = e.all && v == 0;
    }
    return e;
}

i64 max_seed(const FamilyInstance& inst)
{
    i64 m = 0;
    for (const auto& h : inst.hypotheses)
        if (!h.holds) m = std::max(m, h.seed_index);
    return m;
}

void check_relation(VerificationReport& rep, const FamilyInstance& inst, const QSeries& table, i64 m, i64 n_max)
{
    const i64 mult = floor_mod(inst.multiplier, m);
    rep.n_min = inst.n_min;
    rep.n_max = n_max;
    for (i64 n = inst.n_min; n <= n_max; ++n) {
        if (inst.admissible && !inst.admissible(n)) {
            ++rep.excluded;
            continue;
        }
        ++rep.checked;
        const i64 idx = inst.M * n + inst.R;
        const i64 lhs = table[idx];
        const i64 rhs = inst.kind == RelationKind::vanishing ? 0 : mulmod(mult, table[inst.M2 * n + inst.R2], m);
        if (lhs == rhs) continue;
        rep.status = Status::fail;
        if (rep.witnesses.size() < max_witnesses) rep.witnesses.push_back({n, idx, lhs, rhs});
    }
}

}  // namespace

i64 FamilyInstance::max_index(i64 n_max) const
{
    i64 hi = M * n_max + R;
    if (kind == RelationKind::proportional) hi = std::max(hi, M2 * n_max + R2);
    return hi;
}

i64 FamilyInstance::n_within(i64 trunc, i64 n_max) const
{
    i64 n = trunc < R ? -1 : (trunc - R) / M;
    if (kind == RelationKind::proportional) n = std::min(n, trunc < R2 ? -1 : (trunc - R2) / M2);
    return std::max(std::min(n, n_max), n_min - 1);
}

const std::vector<CongruenceFamily>& builtin_families()
{
    static const std::vector<CongruenceFamily> all = make_families();
    return all;
}

const CongruenceFamily& find_family(const std::string& id)
{
    for (const auto& f : builtin_families())
        if (f.id == id) return f;
    throw std::invalid_argument("unknown family '" + id + "'");
}

std::string relation_text(const CongruenceFamily& family, const FamilyInstance& inst)
{
    const std::string b = series_name(family.series_of(inst));
    std::string s = b + "(" + progression(inst.M, inst.R) + ") = ";
    if (inst.kind == RelationKind::vanishing)
        s += "0";
    else
        s += str(inst.multiplier) + "*" + b + "(" + progression(inst.M2, inst.R2) + ")";
    s += " (mod " + str(family.modulus) + ")";
    if (inst.n_min > 0) s += ", n >= " + str(inst.n_min);
    if (inst.admissible) s += ", " + inst.admissible_text;
    return s;
}

VerificationReport sweep(const CongruenceFamily& family, const FamilyInstance& inst, const QSeries& table, i64 n_max)
{
    auto t0 = std::chrono::steady_clock::now();
    if (table.ring() != Ring::mod(family.modulus))
        throw ring_mismatch("sweep of " + family.id + " needs a table over Z/" + str(family.modulus) + ", got " +
                            table.ring().to_string());
    VerificationReport rep;
    rep.family = family.id;
    rep.params = inst.params;
    rep.params["series"] = series_name(family.series_of(inst));
    rep.params["modulus"] = family.modulus;
    rep.requested_n_max = n_max;
    if (max_seed(inst) > table.trunc())
        throw truncation_error(family.id + ": seed index " + str(max_seed(inst)) + " beyond table truncation " +
                               str(table.trunc()));
    Evaluation e = evaluate(inst, table);
    rep.hypotheses = e.results;
    if (!e.all) {
        rep.relation = family.description;
        rep.status = Status::skip;
        rep.elapsed_ms = elapsed_since(t0);
        return rep;
    }
    rep.relation = relation_text(family, inst);
    if (n_max >= inst.n_min && inst.max_index(n_max) > table.trunc())
        throw truncation_error(family.id + ": n_max = " + str(n_max) + " needs index " + str(inst.max_index(n_max)) +
                               ", table truncation is " + str(table.trunc()));
    check_relation(rep, inst, table, family.modulus, n_max);
    for (const auto& alt : inst.alternates) {
        VerificationReport a;
        check_relation(a, alt, table, family.modulus, alt.n_within(table.trunc(), n_max));
        nlohmann::json w = nlohmann::json::array();
        for (const auto& x : a.witnesses) w.push_back({{"n", x.n}, {"index", x.index}, {"lhs", x.lhs}, {"rhs", x.rhs}});
        rep.annotations["alternates"].push_back({{"label", alt.label},
                                                 {"relation", relation_text(family, alt)},
                                                 {"status", to_string(a.status)},
                                                 {"checked", a.checked},
                                                 {"witnesses", w}});
    }
    rep.elapsed_ms = elapsed_since(t0);
    return rep;
}

std::vector<VerificationReport> sweep(const CongruenceFamily& family, const QSeries& table, i64 n_max)
{
    std::vector<VerificationReport> out;
    for (const auto& inst : family.instances())
        if (!inst.series) out.push_back(sweep(family, inst, table, n_max));
    return out;
}

const QSeries& TableCache::get(const BipartitionParams& series, i64 m, i64 trunc)
{
    auto key = std::make_tuple(series.u, series.v, m);
    auto it = tables_.find(key);
    if (it != tables_.end() && it->second.trunc() >= trunc) return it->second;
    QSeries t = bipartition_series(series, Ring::mod(m), std::max<i64>(trunc, 0));
    if (it != tables_.end()) {
        it->second = std::move(t);
        return it->second;
    }
    return tables_.emplace(key, std::move(t)).first->second;
}

std::vector<VerificationReport> run_family(const CongruenceFamily& family, const RunOptions& options, TableCache& cache)
{
    FamilyGrid grid = family.grid;
    if (options.primes) grid.primes = *options.primes;
    i64 n_max = options.n_max.value_or(family.default_n_max);
    i64 cap = options.table_cap;
    if (options.deep) {
        n_max *= 10;
        cap *= 4;
    }
    const std::vector<FamilyInstance> insts = family.generate(grid);

    std::map<std::pair<i64, i64>, i64> seeds, need;
    auto key = [&](const FamilyInstance& inst) {
        const auto& s = family.series_of(inst);
        return std::make_pair(s.u, s.v);
    };
    for (const auto& inst : insts) seeds[key(inst)] = std::max(seeds[key(inst)], max_seed(inst));
    need = seeds;
    std::vector<bool> active(insts.size());
    for (std::size_t i = 0; i < insts.size(); ++i) {
        const auto& inst = insts[i];
        const QSeries& t = cache.get(family.series_of(inst), family.modulus, seeds[key(inst)]);
        if (!evaluate(inst, t).all) continue;
        active[i] = true;
        need[key(inst)] = std::max(need[key(inst)], std::min(cap, inst.max_index(n_max)));
    }

    std::vector<VerificationReport> out;
    for (std::size_t i = 0; i < insts.size(); ++i) {
        const auto& inst = insts[i];
        const QSeries& t = cache.get(family.series_of(inst), family.modulus, need[key(inst)]);
        if (!active[i]) {
            out.push_back(sweep(family, inst, t, n_max));
            continue;
        }
        const i64 n_eff = inst.n_within(std::min(cap, t.trunc()), n_max);
        if (n_eff < inst.n_min) {
            VerificationReport rep = sweep(family, inst, t, inst.n_min - 1);
            rep.requested_n_max = n_max;
            rep.status = Status::skip;
            rep.notes.push_back("table cap " + str(cap) + " is below the first index " +
                                str(inst.max_index(inst.n_min)));
            out.push_back(std::move(rep));
            continue;
        }
        VerificationReport rep = sweep(family, inst, t, n_eff);
        rep.requested_n_max = n_max;
        if (n_eff < n_max)
            rep.notes.push_back("n_max lowered from " + str(n_max) + " to " + str(n_eff) + " by table cap " + str(cap));
        out.push_back(std::move(rep));
    }
    return out;
}

DensityCurve density_experiment(i64 p, i64 m, const std::vector<i64>& checkpoints)
{
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("density: p must be a prime >= 5");
    if (m < 1) throw std::invalid_argument("density: m must be positive");
    for (auto [q, e] : factorize(m)) {
        (void)e;
        if (q < 5 || q == p) throw std::invalid_argument("density: m must have prime factors >= 5 other than p");
    }
    if (checkpoints.empty()) throw std::invalid_argument("density: no checkpoints");
    for (std::size_t i = 0; i < checkpoints.size(); ++i)
        if (checkpoints[i] < 1 || (i && checkpoints[i] <= checkpoints[i - 1]))
            throw std::invalid_argument("density: checkpoints must be positive and strictly increasing");

    EtaProductSpec spec;
    if (m == 1)
        spec.factors = {{p, 1}, {1, -1}};
    else
        spec.factors = {{p, 1}, {m, 1}, {1, -2}};
    const QSeries b = eta_product(spec, Ring::mod(p), checkpoints.back());
    DensityCurve c{p, m, {}};
    i64 count = 0, n = 1;
    for (i64 x : checkpoints) {
        for (; n <= x; ++n) count += b[n] != 0;
        c.points.push_back({x, count, static_cast<double>(count) / static_cast<double>(x)});
    }
    return c;
}

nlohmann::json to_json(const DensityCurve& c)
{
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& pt : c.points) pts.push_back({{"x", pt.x}, {"count", pt.count}, {"ratio", pt.ratio}});
    return {{"p", c.p}, {"m", c.m}, {"points", pts}};
}

}  // namespace qlab
