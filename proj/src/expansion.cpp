// Copyright 2026 The specexp Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "specexp/expansion.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "specexp/bell.hpp"

namespace specexp {

namespace {

mpz_class fact(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// 2^{e/2} in Q(sqrt 2)
ExactScalar sqrt2_power(int e) {
    mpz_class p = mpz_class(1) << (e / 2);
    return e % 2 ? ExactScalar(0, mpq_class(p)) : ExactScalar(mpq_class(p));
}

void merge_spec(MomentSpec& dst, const MomentSpec& src) {
    for (auto [i, m] : src) dst[i] += m;
}

// All compositions of total into positive parts; {} for total 0.
const std::vector<std::vector<int>>& compositions(int total) {
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<int>>> memo;
    std::lock_guard lock(mu);
    auto it = memo.find(total);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rem) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = 1; part <= rem; ++part) {
            cur.push_back(part);
            rec(rem - part);
            cur.pop_back();
        }
    };
    rec(total);
    return memo.emplace(total, std::move(out)).first->second;
}

XPoly u_symbol(int n) {
    DerivMonomial m = n == 0 ? DerivMonomial::B(2) : DerivMonomial::dB(n);
    MomentSpec x;
    if (n > 0) x[n] = 1;
    return XPoly(m, x, sqrt2_power(n));
}

XPoly v_symbol(int n) {
    MomentSpec x;
    if (n > 0) x[n] = 1;
    return XPoly(DerivMonomial::dA(n + 1), x, sqrt2_power(n));
}

std::vector<MomentTerm> to_terms(const XPoly& p) {
    std::vector<MomentTerm> out;
    out.reserve(p.terms().size());
    for (const auto& [k, c] : p.terms()) out.push_back({c, SymPoly(k.first), k.second});
    return out;
}

}  // namespace

UVSeriesTerm uv_series_term(int n) {
    if (n < 0) throw std::invalid_argument("uv_series_term: negative order");
    UVSeriesTerm t;
    t.n = n;
    t.uSym = SymPoly(n == 0 ? DerivMonomial::B(2) : DerivMonomial::dB(n));
    t.vSym = SymPoly(DerivMonomial::dA(n + 1));
    t.sqrt2Power = n;
    t.xLetter = n;
    return t;
}

// ---------------------------------------------------------------------------
// XPoly

XPoly::XPoly(const mpq_class& c) { add_term({DerivMonomial{}, MomentSpec{}}, ExactScalar(c)); }

XPoly::XPoly(const DerivMonomial& m, const MomentSpec& x, const ExactScalar& c) { add_term({m, x}, c); }

void XPoly::add_term(const Key& k, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

XPoly& XPoly::operator+=(const XPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
    XPoly r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            MomentSpec x = ka.second;
            merge_spec(x, kb.second);
            r.add_term({ka.first * kb.first, x}, ca * cb);
        }
    return r;
}

XPoly XPoly::scale(const ExactScalar& c) const {
    XPoly r;
    for (const auto& [k, v] : terms_) r.add_term(k, v * c);
    return r;
}

// ---------------------------------------------------------------------------
// Laurent coefficients

mpq_class binomial(const mpq_class& x, int k) {
    if (k < 0) return 0;
    mpq_class num = 1;
    for (int j = 0; j < k; ++j) num *= x - j;
    return num / mpq_class(fact(k));
}

std::vector<MomentTerm> crm_direct(int rTwice, int m, int M) {
    if (M < 0 || m < 0) throw std::invalid_argument("crm_direct: negative order");
    const mpq_class r(rTwice, 2);
    XPoly acc;
    for (int n = 0; 2 * n <= M; ++n) {
        const int N = M - 2 * n;
        const mpq_class pre = mpq_class(1) / mpq_class(fact(n) * (mpz_class(1) << (2 * n)));
        const ExactScalar root = sqrt2_power(N);
        for (int beta = 0; beta <= N; ++beta) {
            for (const auto& ell : compositions(beta)) {
                const int k = static_cast<int>(ell.size());
                const mpq_class bk = binomial(r - n, k);
                for (const auto& q : compositions(N - beta)) {
                    const int p = static_cast<int>(q.size());
                    if (p > 2 * n + m) continue;  // binom(2n+m, p) = 0
                    mpq_class c = pre * bk * binomial(2 * n + m, p);
                    DerivMonomial mono = DerivMonomial::B(rTwice - 2 * n - 2 * k);
                    if (2 * n + m - p) mono.aExp[1] = 2 * n + m - p;
                    MomentSpec x;
                    mpz_class den = 1;
                    for (int l : ell) {
                        mono.bExp[l] += 1;
                        x[l] += 1;
                        den *= fact(l);
                    }
                    for (int l : q) {
                        mono.aExp[l + 1] += 1;
                        x[l] += 1;
                        den *= fact(l);
                    }
                    c /= den;
                    acc.add_term({mono, x}, ExactScalar(c) * root);
                }
            }
        }
    }
    return to_terms(acc);
}

std::vector<MomentTerm> crm_bell(int rTwice, int m, int order) {
    if (order < 0 || m < 0) throw std::invalid_argument("crm_bell: negative order");
    const mpq_class r(rTwice, 2);
    std::vector<XPoly> us, vs;
    for (int i = 1; i <= std::max(order, 1); ++i) {
        us.push_back(u_symbol(i));
        vs.push_back(v_symbol(i));
    }
    std::map<std::pair<int, int>, XPoly> bu, bv;
    auto bellU = [&](int b, int k) -> const XPoly& {
        auto it = bu.find({b, k});
        if (it == bu.end()) it = bu.emplace(std::make_pair(b, k), bell_polynomial(b, k, us)).first;
        return it->second;
    };
    auto bellV = [&](int b, int k) -> const XPoly& {
        auto it = bv.find({b, k});
        if (it == bv.end()) it = bv.emplace(std::make_pair(b, k), bell_polynomial(b, k, vs)).first;
        return it->second;
    };

    XPoly acc;
    for (int n = 0; 2 * n <= order; ++n) {
        const int rest = order - 2 * n;
        const mpq_class pre = mpq_class(1) / mpq_class(fact(n) * (mpz_class(1) << (2 * n)) * fact(rest));
        for (int k = 0; k <= order; ++k) {
            const mpq_class bk = binomial(r - n, k);
            for (int p = 0; p <= order && p <= 2 * n + m; ++p) {
                const mpq_class bp = binomial(2 * n + m, p);
                DerivMonomial lead = DerivMonomial::B(rTwice - 2 * n - 2 * k);
                if (2 * n + m - p) lead.aExp[1] = 2 * n + m - p;
                for (int beta = 0; beta <= rest; ++beta) {
                    if (beta < k || rest - beta < p) continue;  // Bell polynomial vanishes
                    const XPoly& left = bellU(beta, k);
                    const XPoly& right = bellV(rest - beta, p);
                    mpq_class c = pre * bk * bp * mpq_class(fact(k) * fact(p)) *
                                  mpq_class(fact(rest) / (fact(beta) * fact(rest - beta)));
                    acc += (XPoly(lead, {}, ExactScalar(c)) * left * right);
                }
            }
        }
    }
    return to_terms(acc);
}

SymPoly integrate_bridge(const std::vector<MomentTerm>& terms) {
    unsigned nw = std::max(1u, std::min<unsigned>(worker_count(), terms.size() / 64 + 1));
    std::vector<SymPoly> parts(nw);
    auto work = [&](unsigned w) {
        std::map<MomentSpec, mpq_class> cache;
        std::size_t lo = terms.size() * w / nw, hi = terms.size() * (w + 1) / nw;
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& t = terms[i];
            auto it = cache.find(t.xMultiset);
            if (it == cache.end()) it = cache.emplace(t.xMultiset, moment_product(t.xMultiset)).first;
            if (sgn(it->second) == 0) continue;
            parts[w] += t.sym.scale(t.scalar * ExactScalar(it->second));
        }
    };
    if (nw == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nw; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    SymPoly out;
    for (const auto& p : parts) out += p;
    for (const auto& [mono, c] : out.terms())
        if (!c.is_rational()) throw std::logic_error("integrate_bridge: residual sqrt(2) component");
    return out;
}

SymPoly a2M(int M) {
    if (M < 0) throw std::invalid_argument("a2M: negative order");
    static std::mutex mu;
    static std::map<int, SymPoly> memo;
    {
        std::lock_guard lock(mu);
        auto it = memo.find(M);
        if (it != memo.end()) return it->second;
    }
    SymPoly r = integrate_bridge(crm_direct(-3, 0, 2 * M)).scale(ExactScalar::ratio(1, 2));
    if (M >= 1) {
        SymPoly d = integrate_bridge(crm_direct(-5, 2, 2 * M - 2)) - integrate_bridge(crm_direct(-1, 0, 2 * M - 2));
        r += d.scale(ExactScalar::ratio(1, 4));
    }
    std::lock_guard lock(mu);
    return memo.emplace(M, std::move(r)).first->second;
}

// ---------------------------------------------------------------------------
// Scale factors

namespace {

double power_law(double c, double gamma, int order, double t) {
    if (t <= 0.0) throw std::domain_error("scale factor: power law needs t > 0");
    double f = 1.0;
    for (int j = 0; j < order; ++j) f *= gamma - j;
    return c * f * std::pow(t, gamma - order);
}

}  // namespace

double ScaleFactor::derivative(int order, double t) const {
    if (order < 0) throw std::invalid_argument("ScaleFactor: negative order");
    switch (family) {
        case ScaleFamily::Inflation:
            return std::pow(H, order) * std::exp(H * t);
        case ScaleFamily::Radiation:
            return power_law(std::sqrt(2.0 * H), 0.5, order, t);
        case ScaleFamily::Matter:
            return power_law(std::pow(1.5 * H, 2.0 / 3.0), 2.0 / 3.0, order, t);
        case ScaleFamily::Empty:
            return order == 0 ? H * t : (order == 1 ? H : 0.0);
        case ScaleFamily::Sphere:
            switch (order % 4) {
                case 0: return std::sin(t);
                case 1: return std::cos(t);
                case 2: return -std::sin(t);
                default: return -std::cos(t);
            }
        case ScaleFamily::User:
            if (!user) throw std::invalid_argument("ScaleFactor: user family without callback");
            return user(order, t);
    }
    throw std::logic_error("ScaleFactor: unknown family");
}

ScaleFamily ScaleFactor::parse_family(const std::string& name) {
    if (name == "inflation") return ScaleFamily::Inflation;
    if (name == "radiation") return ScaleFamily::Radiation;
    if (name == "matter") return ScaleFamily::Matter;
    if (name == "empty") return ScaleFamily::Empty;
    if (name == "sphere") return ScaleFamily::Sphere;
    if (name == "user") return ScaleFamily::User;
    throw std::invalid_argument("unknown scale-factor family: " + name);
}

std::vector<HeatCoefficient> heat_trace_series(int maxM, const ScaleFactor& a, double t) {
    if (maxM < 0) throw std::invalid_argument("heat_trace_series: negative order");
    if (a.derivative(0, t) == 0.0) throw std::domain_error("heat_trace_series: a(t) = 0");
    static std::mutex mu;
    static std::map<int, AFormPoly> forms;
    std::vector<HeatCoefficient> out;
    auto cb = [&](int i) { return a.derivative(i, t); };
    for (int M = 0; M <= maxM; ++M) {
        AFormPoly f;
        {
            std::lock_guard lock(mu);
            auto it = forms.find(M);
            if (it != forms.end()) f = it->second;
        }
        if (f.is_zero()) {
            f = to_a_form(a2M(M));
            std::lock_guard lock(mu);
            forms.emplace(M, f);
        }
        out.push_back({2 * M - 4, eval_numeric(f, cb)});
    }
    return out;
}

}  // namespace specexp
