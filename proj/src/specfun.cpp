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

#include "specexp/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/random/sobol.hpp>
#include <gmpxx.h>
#include <json.hpp>

#include "specexp/bridge.hpp"

namespace specexp {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrtPi = 1.7724538509055160272981674833411;

// ---------------------------------------------------------------------------
// Kummer series

bool nonpositive_integer(cplx b) {
    return b.imag() == 0.0 && b.real() <= 0.0 && std::floor(b.real()) == b.real();
}

struct SeriesResult {
    cplx sum;
    double maxTerm;
};

SeriesResult kummer_series_double(cplx a, cplx b, cplx x) {
    cplx sum = 1.0, comp = 0.0, term = 1.0;
    double maxTerm = 1.0;
    for (int n = 0; n < 100000; ++n) {
        term *= (a + double(n)) * x / ((b + double(n)) * double(n + 1));
        cplx y = term - comp;  // Kahan
        cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        maxTerm = std::max(maxTerm, std::abs(term));
        if (term == 0.0) break;
        bool shrinking = std::abs((a + double(n + 1)) * x) < std::abs((b + double(n + 1)) * double(n + 2));
        if (shrinking && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return {sum, maxTerm};
}

struct MpComplex {
    mpf_class re, im;
    explicit MpComplex(mp_bitcnt_t prec, cplx v = 0.0) : re(v.real(), prec), im(v.imag(), prec) {}
};

cplx kummer_series_mp(cplx a, cplx b, cplx x, mp_bitcnt_t prec) {
    MpComplex sum(prec, 1.0), term(prec, 1.0), an(prec, a), bn(prec, b), xx(prec, x);
    mpf_class tr(0, prec), ti(0, prec), den(0, prec), nr(0, prec), ni(0, prec), eps(0, prec), mag(0, prec),
        smag(0, prec);
    mpf_div_2exp(eps.get_mpf_t(), mpf_class(1, prec).get_mpf_t(), prec - 8);
    mpf_class eps2 = eps * eps;
    for (int n = 0; n < 200000; ++n) {
        // term *= (a + n) x / ((b + n)(n + 1))
        nr = an.re * xx.re - an.im * xx.im;
        ni = an.re * xx.im + an.im * xx.re;
        tr = term.re * nr - term.im * ni;
        ti = term.re * ni + term.im * nr;
        den = (bn.re * bn.re + bn.im * bn.im) * (n + 1);
        term.re = (tr * bn.re + ti * bn.im) / den;
        term.im = (ti * bn.re - tr * bn.im) / den;
        sum.re += term.re;
        sum.im += term.im;
        an.re += 1;
        bn.re += 1;
        mag = term.re * term.re + term.im * term.im;
        if (mag == 0) break;
        smag = sum.re * sum.re + sum.im * sum.im;
        double ra = std::abs(cplx(an.re.get_d(), an.im.get_d()) * x);
        double rb = std::abs(cplx(bn.re.get_d(), bn.im.get_d())) * (n + 2);
        if (ra < rb && mag <= eps2 * smag) break;
    }
    return {sum.re.get_d(), sum.im.get_d()};
}

cplx kummer_series(cplx a, cplx b, cplx x) {
    SeriesResult r = kummer_series_double(a, b, x);
    double s = std::abs(r.sum);
    double ratio = s > 0 ? r.maxTerm / s : 1e300;
    if (ratio < 1e3) return r.sum;
    double extra = std::min(std::log2(ratio), 4000.0);
    return kummer_series_mp(a, b, x, static_cast<mp_bitcnt_t>(96 + extra));
}

// ---------------------------------------------------------------------------
// Simplex integrals

double quad_form(const std::vector<double>& u, const double* v) {
    std::size_t n = u.size();
    double q = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        q += u[j] * u[j] * v[j] * (1.0 - v[j]);
        for (std::size_t m = j + 1; m < n; ++m) q += 2.0 * u[j] * u[m] * v[j] * (1.0 - v[m]);
    }
    return q;
}

double nested_simplex(const std::vector<double>& u, const QuadratureSpec& q) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    int n = static_cast<int>(u.size());
    std::vector<double> v(n);
    double outerTol = std::min(1e-11, q.tolerance * 1e-2);
    std::function<double(int, double)> level = [&](int k, double upper) -> double {
        double relTol = k == n - 1 ? outerTol : 0.1 * outerTol;
        // integrate v_k over [0, upper]
        auto f = [&](double t) {
            v[k] = t;
            if (k == 0) return std::exp(-0.5 * quad_form(u, v.data()));
            return level(k - 1, t);
        };
        // The integrand is entire, so a 61-point pair is exact to rounding on
        // most panels; deep bisection of the inner levels only chases noise.
        unsigned depth = k == n - 1 ? q.maxSubdivisions : std::min(q.maxSubdivisions, 2);
        return GK::integrate(f, 0.0, upper, depth, relTol);
    };
    return level(n - 1, 1.0);
}

double qmc_simplex(const std::vector<double>& u, const QuadratureSpec& q) {
    const unsigned n = static_cast<unsigned>(u.size());
    const std::int64_t total = q.qmcPoints;
    constexpr std::int64_t kBlock = 1 << 16;
    const std::int64_t nBlocks = (total + kBlock - 1) / kBlock;

    std::mt19937_64 rng(q.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> shift(n);
    for (auto& s : shift) s = unif(rng);

    std::vector<double> partial(nBlocks, 0.0);
    std::atomic<std::int64_t> next{0};
    auto work = [&] {
        boost::random::sobol gen(n);
        const double scale = 1.0 / (double(gen.max()) + 1.0);
        std::vector<double> x(n);
        for (std::int64_t blk; (blk = next.fetch_add(1)) < nBlocks;) {
            std::int64_t begin = blk * kBlock, end = std::min(total, begin + kBlock);
            gen.seed(static_cast<std::uint64_t>(begin));
            double s = 0.0;
            for (std::int64_t i = begin; i < end; ++i) {
                for (unsigned d = 0; d < n; ++d) {
                    double t = double(gen()) * scale + shift[d];
                    x[d] = t >= 1.0 ? t - 1.0 : t;
                }
                std::sort(x.begin(), x.end());
                s += std::exp(-0.5 * quad_form(u, x.data()));
            }
            partial[blk] = s;
        }
    };
    unsigned workers = std::max(1u, std::min<unsigned>(worker_count(), static_cast<unsigned>(nBlocks)));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    double sum = 0.0;
    for (double p : partial) sum += p;
    double factorial = 1.0;
    for (unsigned k = 2; k <= n; ++k) factorial *= k;
    return sum / double(total) / factorial;
}

// ---------------------------------------------------------------------------
// Closed-form term lists

struct DawsonTerm {
    double weight;  // sign * coeff (* sqrt 2)
    std::vector<int> fArg;
    std::vector<std::vector<int>> numer;
    std::vector<std::vector<int>> denom;
};

std::vector<DawsonTerm> parse_terms(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    bool root2 = j.value("sqrt2", false);
    std::vector<DawsonTerm> out;
    auto as_set = [](const nlohmann::json& a) {
        std::vector<int> s;
        if (a.is_number_integer()) s.push_back(a.get<int>());
        else
            for (const auto& i : a) s.push_back(i.get<int>());
        return s;
    };
    for (const auto& t : j.at("terms")) {
        DawsonTerm d;
        d.weight = t.at("sign").get<double>() * t.at("coeff").get<double>() * (root2 ? kSqrt2 : 1.0);
        d.fArg = as_set(t.at("FArg"));
        for (const auto& x : t.at("numer")) d.numer.push_back(as_set(x));
        for (const auto& x : t.at("denom")) d.denom.push_back(as_set(x));
        out.push_back(std::move(d));
    }
    return out;
}

const std::vector<DawsonTerm>& term_list(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<DawsonTerm>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, parse_terms(data_directory() + "/dawson_simplex_n" + std::to_string(n) + ".json"))
                 .first;
    return it->second;
}

double index_sum(const std::vector<double>& u, const std::vector<int>& idx) {
    double s = 0.0;
    for (int i : idx) {
        if (i < 1 || i > static_cast<int>(u.size())) throw std::runtime_error("term list index out of range");
        s += u[i - 1];
    }
    return s;
}

void require_generic(const std::vector<double>& u) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = i; j < u.size(); ++j) {
            s += u[j];
            if (std::abs(s) < 1e-12) throw std::invalid_argument("dawson simplex: vanishing partial sum of u");
        }
    }
}

Verification judge(cplx lhs, cplx rhs, double tol) {
    Verification v{lhs, rhs, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)), false};
    v.pass = v.error <= tol;
    return v;
}

// ---------------------------------------------------------------------------
// Half-line Mellin quadrature

template <class F>
double half_line(F f, double split) {
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    thread_local boost::math::quadrature::exp_sinh<double> es;
    return ts.integrate(f, 0.0, split, 1e-13) + es.integrate([&](double x) { return f(x + split); }, 1e-13);
}

cplx mellin_quadrature(cplx z, double U, double V, int s) {
    auto g = [=](double x) -> cplx {
        if (x <= 0.0) return 0.0;
        return std::exp((z - 1.0) * std::log(x) - U * x * x - s * V * x) * (x * x - 0.25);
    };
    double split = 1.0 + std::max(0.0, -s * V) / (2.0 * U);
    double re = half_line([&](double x) { return g(x).real(); }, split);
    double im = half_line([&](double x) { return g(x).imag(); }, split);
    return {re, im};
}

void require_positive_u(double U) {
    if (!(U > 0.0)) throw std::invalid_argument("U must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------

double dawson(double x) {
    double ax = std::abs(x);
    double r;
    if (ax < 6.0) {
        // exp(-x^2) sum x^{2k+1} / (k! (2k+1)); all terms positive
        double x2 = ax * ax, p = ax, s = ax;
        for (int k = 1; k < 400; ++k) {
            p *= x2 / k;
            double t = p / (2 * k + 1);
            s += t;
            if (t < 1e-18 * s) break;
        }
        r = std::exp(-x2) * s;
    } else {
        // 1/(2x) sum (2k-1)!! / (2x^2)^k, truncated at the smallest term
        double y = 1.0 / (2.0 * ax * ax), t = 1.0, s = 1.0;
        for (int k = 1; k < 200; ++k) {
            double nt = t * (2 * k - 1) * y;
            if (nt >= t) break;
            t = nt;
            s += t;
            if (t < 1e-18 * s) break;
        }
        r = s / (2.0 * ax);
    }
    return x < 0 ? -r : r;
}

cplx kummer_1f1(cplx a, cplx b, cplx x) {
    if (nonpositive_integer(b)) throw PoleError("1F1: b is a non-positive integer");
    if (x == 0.0) return 1.0;
    if (x.real() < 0.0) return std::exp(x) * kummer_series(b - a, b, -x);
    return kummer_series(a, b, x);
}

void QuadratureSpec::validate() const {
    if (!(tolerance > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
    if (maxSubdivisions < 1) throw std::invalid_argument("maxSubdivisions must be positive");
    if (qmcPoints < 1) throw std::invalid_argument("qmcPoints must be positive");
}

double bridge_simplex_gaussian(const std::vector<double>& u, const QuadratureSpec& q) {
    q.validate();
    if (u.empty()) return 1.0;
    return u.size() <= 3 ? nested_simplex(u, q) : qmc_simplex(u, q);
}

double dawson_simplex_closed_form(const std::vector<double>& u) {
    require_generic(u);
    const double c = 2.0 * kSqrt2;
    switch (u.size()) {
        case 1:
            return c * dawson(u[0] / c) / u[0];
        case 2: {
            double s = u[0] + u[1];
            return 2.0 * c * (dawson(u[0] / c) + dawson(u[1] / c) - dawson(s / c)) / (u[0] * u[1] * s);
        }
        case 3:
        case 4: {
            double total = 0.0;
            for (const auto& t : term_list(static_cast<int>(u.size()))) {
                double v = t.weight * dawson(index_sum(u, t.fArg) / c);
                for (const auto& nu : t.numer) v *= index_sum(u, nu);
                for (const auto& de : t.denom) v /= index_sum(u, de);
                total += v;
            }
            return total;
        }
        default:
            throw std::invalid_argument("dawson simplex closed form: n must be 1..4");
    }
}

Verification verify_dawson_simplex(int n, const std::vector<double>& u, const QuadratureSpec& q) {
    if (n < 1 || n > 4 || static_cast<int>(u.size()) != n)
        throw std::invalid_argument("verify_dawson_simplex: need n in 1..4 and |u| = n");
    double rhs = dawson_simplex_closed_form(u);
    double lhs = bridge_simplex_gaussian(u, q);
    Verification v{lhs, rhs, std::abs(lhs - rhs), false};
    v.pass = v.error <= q.tolerance;
    return v;
}

Verification verify_gaussian_multiplicity(double U, double V, const QuadratureSpec& q) {
    require_positive_u(U);
    q.validate();
    thread_local boost::math::quadrature::sinh_sinh<double> ss;
    double x0 = -V / (2.0 * U), width = 1.0 / std::sqrt(U);
    // centre on the peak and scale by the width; the integrand is unchanged
    double lhs = width * ss.integrate(
                             [&](double y) {
                                 double x = x0 + width * y;
                                 return (x * x - 0.25) * std::exp(-x * x * U - x * V);
                             },
                             1e-14);
    double rhs = kSqrtPi * std::exp(V * V / (4.0 * U)) * (-U * U + 2.0 * U + V * V) / (4.0 * std::pow(U, 2.5));
    return judge(lhs, rhs, q.tolerance);
}

cplx kummer_h(cplx z, double U, double V, double b) {
    require_positive_u(U);
    double w = V * V / (4.0 * U);
    return std::exp(-0.5 * z * std::log(U)) * complex_gamma(0.5 * z) * kummer_1f1(0.5 * z, b, w);
}

cplx mellin_gaussian(cplx z, double U, double V, int s) {
    require_positive_u(U);
    if (s != 1 && s != -1) throw std::invalid_argument("mellin_gaussian: sign must be +1 or -1");
    double w = V * V / (4.0 * U);
    cplx even = std::sqrt(U) * complex_gamma(0.5 * z) *
                (-U * kummer_1f1(0.5 * z, 0.5, w) + 2.0 * z * kummer_1f1(0.5 * z + 1.0, 0.5, w));
    cplx odd = V * complex_gamma(0.5 * (z + 1.0)) *
               (U * kummer_1f1(0.5 * (z + 1.0), 1.5, w) - 2.0 * (z + 1.0) * kummer_1f1(0.5 * (z + 3.0), 1.5, w));
    return 0.125 * std::exp(-0.5 * (z + 3.0) * std::log(U)) * (even + double(s) * odd);
}

cplx mellin_gaussian_pair(cplx z, double U, double V) {
    require_positive_u(U);
    double w = V * V / (4.0 * U);
    return -0.25 * std::exp((-1.0 - 0.5 * z) * std::log(U)) * complex_gamma(0.5 * z) *
           (U * kummer_1f1(0.5 * z, 0.5, w) - 2.0 * z * kummer_1f1(1.0 + 0.5 * z, 0.5, w));
}

cplx mellin_gaussian_pair_scaled(cplx z, double U, double V, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("scale factor must be positive");
    double la = std::log(a);
    return -0.25 * std::exp(z * la) * kummer_h(z, U, V) + std::exp((z + 2.0) * la) * kummer_h(z + 2.0, U, V);
}

Verification verify_mellin_z1(double U, double V, double tol) {
    require_positive_u(U);
    cplx lhs = mellin_gaussian_pair(1.0, U, V);
    double rhs = std::exp(V * V / (4.0 * U)) * kSqrtPi / 4.0 *
                 (-std::pow(U, -0.5) + 2.0 * std::pow(U, -1.5) + V * V * std::pow(U, -2.5));
    return judge(lhs, rhs, tol);
}

MellinPmReport verify_mellin_pm(cplx z, double U, double V, const QuadratureSpec& q, double a) {
    require_positive_u(U);
    q.validate();
    if (!(z.real() > 0.0)) throw std::invalid_argument("Mellin quadrature diverges for Re z <= 0");
    MellinPmReport r;
    cplx qm = mellin_quadrature(z, U, V, 1), qp = mellin_quadrature(z, U, V, -1);
    r.minus = judge(qm, mellin_gaussian(z, U, V, 1), q.tolerance);
    r.plus = judge(qp, mellin_gaussian(z, U, V, -1), q.tolerance);
    r.pair = judge(qm + qp, mellin_gaussian_pair(z, U, V), q.tolerance);
    r.scaling = judge(mellin_gaussian_pair_scaled(z, U, V, a), mellin_gaussian_pair(z, U / (a * a), V / a), q.tolerance);
    r.pass = r.minus.pass && r.plus.pass && r.pair.pass && r.scaling.pass;
    return r;
}

}  // namespace specexp
