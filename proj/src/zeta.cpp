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

#include "specexp/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifndef SPECEXP_DATA_DIR
#define SPECEXP_DATA_DIR "data"
#endif

namespace specexp {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// B_{2k}/(2k)! as doubles, k = 0..kMaxEM
constexpr int kMaxEM = 60;

const std::vector<double>& em_coefficients() {
    static const std::vector<double> c = [] {
        std::vector<double> v(kMaxEM + 1);
        for (int k = 0; k <= kMaxEM; ++k) v[k] = mpq_class(bernoulli(2 * k) / mpq_class(factorial(2 * k))).get_d();
        return v;
    }();
    return c;
}

cplx zeta_euler_maclaurin(cplx s) {
    const auto& bc = em_coefficients();
    const int N = 20 + static_cast<int>(std::ceil(std::abs(s)));
    cplx sum = 0.0;
    for (int n = N - 1; n >= 1; --n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    const double lnN = std::log(static_cast<double>(N));
    cplx Ns = std::exp(-s * lnN);  // N^{-s}
    sum += Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
    // T_k = B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    cplx rising = s;          // s(s+1)...(s+2k-2)
    cplx pw = Ns / static_cast<double>(N);
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= kMaxEM; ++k) {
        cplx t = bc[k] * rising * pw;
        double at = std::abs(t);
        if (at > prev) break;  // asymptotic series started to diverge
        sum += t;
        if (at <= 1e-18 * std::abs(sum)) break;
        prev = at;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        pw /= static_cast<double>(N) * N;
    }
    return sum;
}

cplx log_gamma_stirling(cplx w) {
    static const std::vector<double> coef = [] {
        std::vector<double> c;
        for (int k = 1; k <= 14; ++k) c.push_back(mpq_class(bernoulli(2 * k) / (2 * k * (2 * k - 1))).get_d());
        return c;
    }();
    cplx r = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2 * kPi);
    cplx winv = 1.0 / w, w2 = winv * winv, p = winv;
    for (double c : coef) {
        r += c * p;
        p *= w2;
    }
    return r;
}

double exact_zeta_nonpositive(int n) {
    // zeta(-m) = (-1)^m B_{m+1}/(m+1)
    int m = -n;
    mpq_class v = bernoulli(m + 1) / (m + 1);
    return m % 2 ? -v.get_d() : v.get_d();
}

}  // namespace

mpq_class bernoulli(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli: negative index");
    static std::mutex mu;
    static std::vector<mpq_class> table{mpq_class(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        mpq_class acc = 0;
        mpz_class bin = 1;  // binom(m+1, k)
        for (int k = 0; k < m; ++k) {
            acc += bin * table[k];
            bin = bin * (m + 1 - k) / (k + 1);
        }
        mpq_class b = -acc / (m + 1);
        b.canonicalize();
        table.push_back(b);
    }
    return table[n];
}

cplx log_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && is_integer(z.real())) throw PoleError("log_gamma: pole");
    if (z.imag() == 0.0 && z.real() > 0.0) return std::lgamma(z.real());
    // log prod (z+k): modulus as one product, argument summed term by term so
    // the branch is the continuous one
    double logMod = 0.0, arg = 0.0, mod = 1.0;
    while (z.real() < 0.5 || std::abs(z) < 17.0) {
        mod *= std::abs(z);
        if (mod > 1e250 || mod < 1e-250) {
            logMod += std::log(mod);
            mod = 1.0;
        }
        arg += std::arg(z);
        z += 1.0;
    }
    return log_gamma_stirling(z) - cplx(logMod + std::log(mod), arg);
}

cplx complex_gamma(cplx z) {
    if (z.imag() == 0.0) {
        if (z.real() <= 0.0 && is_integer(z.real())) throw PoleError("gamma: pole");
        return std::tgamma(z.real());
    }
    return std::exp(log_gamma(z));
}

cplx riemann_zeta(cplx s) {
    if (s == cplx(1.0, 0.0)) throw PoleError("riemann_zeta: pole at s = 1");
    if (s.imag() == 0.0 && is_integer(s.real()) && std::abs(s.real()) < 500) {
        int n = static_cast<int>(s.real());
        if (n <= 0) return exact_zeta_nonpositive(n);
        if (n % 2 == 0) return zeta_exact(n).to_double();
    }
    if (s.real() < 0.0) {
        cplx t = 1.0 - s;
        return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(kPi * s / 2.0) * std::exp(log_gamma(t)) *
               zeta_euler_maclaurin(t);
    }
    return zeta_euler_maclaurin(s);
}

cplx riemann_zeta_derivative(cplx s) {
    if (s.imag() == 0.0 && is_integer(s.real()) && s.real() < 0 && static_cast<long>(s.real()) % 2 == 0) {
        // zeta'(-2k) = (-1)^k (2k)! zeta(2k+1) / (2 (2 pi)^{2k})
        int k = static_cast<int>(-s.real()) / 2;
        double v = std::exp(std::lgamma(2.0 * k + 1) - 2.0 * k * std::log(2 * kPi)) *
                   riemann_zeta(cplx(2 * k + 1, 0)).real() / 2.0;
        return k % 2 ? -v : v;
    }
    if (s == cplx(1.0, 0.0)) throw PoleError("riemann_zeta_derivative: pole at s = 1");
    // Cauchy integral on a circle avoiding the pole
    double h = std::min(0.25, std::abs(s - 1.0) / 2.0);
    const int n = 64;
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
        cplx w = std::polar(1.0, 2 * kPi * k / n);
        acc += riemann_zeta(s + h * w) / w;
    }
    return acc / (static_cast<double>(n) * h);
}

ExactToken zeta_exact(int n) {
    if (n == 1) throw PoleError("zeta_exact: pole at s = 1");
    if (n == 0) return ExactToken(mpq_class(-1, 2));
    if (n < 0) {
        mpq_class v = -bernoulli(1 - n) / (1 - n);
        v.canonicalize();
        return ExactToken(v);
    }
    if (n % 2) return ExactToken::zeta_odd(n);
    // zeta(2k) = (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!)
    int k = n / 2;
    mpq_class c = bernoulli(n) * mpq_class(mpz_class(1) << n) / (2 * mpq_class(factorial(n)));
    if (k % 2 == 0) c = -c;
    c.canonicalize();
    return ExactToken(c) * ExactToken::pi_power(n);
}

double hardy_z(double t) {
    double theta = log_gamma(cplx(0.25, t / 2)).imag() - t / 2 * std::log(kPi);
    return (std::polar(1.0, theta) * riemann_zeta(cplx(0.5, t))).real();
}

std::string data_directory() {
    if (const char* d = std::getenv("SPECEXP_DATA_DIR"); d && *d) return d;
    return SPECEXP_DATA_DIR;
}

const std::vector<double>& zeta_zero_ordinates() {
    static std::vector<double> zeros;
    static std::once_flag once;
    std::call_once(once, [] {
        std::string path = data_directory() + "/zeta_zeros.txt";
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open zero table " + path);
        std::vector<double> v;
        std::string line;
        while (std::getline(in, line)) {
            auto p = line.find_first_not_of(" \t\r");
            if (p == std::string::npos || line[p] == '#') continue;
            v.push_back(std::stod(line.substr(p)));
        }
        for (double g : v) {
            const double d = 1e-6;
            if (hardy_z(g - d) * hardy_z(g + d) >= 0.0)
                throw std::runtime_error("zero table entry " + std::to_string(g) + " fails the sign-change check");
        }
        zeros = std::move(v);
    });
    return zeros;
}

// -------------------------------------------------------------------------
// Fractal strings

bool Strip::contains(cplx s) const {
    return s.real() >= reMin && s.real() <= reMax && s.imag() >= imMin && s.imag() <= imMax;
}

std::vector<long> euler_phi_table(long N) {
    std::vector<long> phi(N + 1);
    for (long i = 0; i <= N; ++i) phi[i] = i;
    for (long p = 2; p <= N; ++p)
        if (phi[p] == p)
            for (long m = p; m <= N; m += p) phi[m] -= phi[m] / p;
    return phi;
}

FractalString FractalString::ford() {
    FractalString f;
    f.variant = StringVariant::Ford;
    return f;
}

FractalString FractalString::truncated(std::vector<Radius> radii) {
    for (auto& r : radii) {
        if (r.exact) {
            r.exact->canonicalize();
            if (*r.exact <= 0) throw std::invalid_argument("radius must be positive");
            r.value = r.exact->get_d();
        }
        if (!(r.value > 0.0)) throw std::invalid_argument("radius must be positive");
        if (r.multiplicity < 1) throw std::invalid_argument("multiplicity must be >= 1");
    }
    FractalString f;
    f.variant = StringVariant::Truncated;
    f.radii = std::move(radii);
    return f;
}

FractalString FractalString::analytic(std::function<cplx(cplx)> eval, std::vector<PoleTerm> poles) {
    for (std::size_t i = 0; i < poles.size(); ++i) {
        if (poles[i].residue == cplx(0, 0)) throw std::invalid_argument("pole with zero residue");
        for (std::size_t j = 0; j < i; ++j)
            if (poles[i].sigma == poles[j].sigma) throw std::invalid_argument("duplicate pole");
    }
    FractalString f;
    f.variant = StringVariant::Analytic;
    f.evaluator = std::move(eval);
    f.poles = std::move(poles);
    return f;
}

FractalString FractalString::ford_prefix(long N, bool exact) {
    auto phi = euler_phi_table(N);
    std::vector<Radius> radii;
    radii.reserve(N);
    for (long n = 1; n <= N; ++n) {
        Radius r;
        r.value = 1.0 / (2.0 * n * n);
        if (exact) r.exact = mpq_class(1, 2 * mpz_class(n) * n);
        r.multiplicity = phi[n];
        radii.push_back(std::move(r));
    }
    return truncated(std::move(radii));
}

FractalString FractalString::from_json_text(const std::string& text) {
    using nlohmann::json;
    json j = json::parse(text);
    std::string v = j.value("variant", "truncated");
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "ford") return ford();
    std::vector<PoleTerm> poles;
    if (j.contains("poles"))
        for (const auto& p : j["poles"]) {
            if (p.size() != 4) throw std::invalid_argument("pole entries are [re, im, resRe, resIm]");
            poles.push_back({{p[0].get<double>(), p[1].get<double>()}, {p[2].get<double>(), p[3].get<double>()}});
        }
    if (v == "truncated") {
        std::vector<Radius> radii;
        for (const auto& e : j.at("radii")) {
            if (e.size() != 2) throw std::invalid_argument("radius entries are [r, mult]");
            Radius r;
            if (e[0].is_string()) r.exact = mpq_class(e[0].get<std::string>());
            else if (e[0].is_number_integer()) r.exact = mpq_class(e[0].get<long>());
            else r.value = e[0].get<double>();
            r.multiplicity = e[1].get<long>();
            radii.push_back(std::move(r));
        }
        if (!poles.empty()) throw std::invalid_argument("a truncated string has no poles");
        return truncated(std::move(radii));
    }
    if (v == "analytic") {
        std::vector<std::pair<cplx, cplx>> values;
        if (j.contains("values"))
            for (const auto& p : j["values"])
                values.push_back({{p[0].get<double>(), p[1].get<double>()}, {p[2].get<double>(), p[3].get<double>()}});
        auto eval = [values](cplx s) -> cplx {
            for (const auto& [at, val] : values)
                if (std::abs(at - s) < 1e-12) return val;
            throw std::domain_error("analytic string: no value tabulated at this point");
        };
        return analytic(eval, std::move(poles));
    }
    throw std::invalid_argument("unknown string variant '" + v + "'");
}

FractalString FractalString::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open string descriptor " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

bool FractalString::exact_radii() const {
    if (variant != StringVariant::Truncated) return false;
    return std::all_of(radii.begin(), radii.end(), [](const Radius& r) { return r.exact.has_value(); });
}

cplx ford_zeta(cplx s) {
    if (s == cplx(1.0, 0.0)) throw PoleError("ford_zeta: pole at s = 1");
    if (s.imag() == 0.0 && is_integer(s.real()) && s.real() <= -1) throw PoleError("ford_zeta: zeta(2s) = 0");
    if (s == cplx(0.5, 0.0)) return 0.0;  // zeta(2s) has its pole there
    cplx den = riemann_zeta(2.0 * s);
    if (den == cplx(0.0, 0.0)) throw PoleError("ford_zeta: zeta(2s) = 0");
    return std::pow(2.0, -s) * riemann_zeta(2.0 * s - 1.0) / den;
}

ExactToken ford_zeta_exact(int n) {
    if (n == 1 || n < 0) throw PoleError("ford_zeta_exact: pole at s = " + std::to_string(n));
    if (n == 0) return zeta_exact(-1) / zeta_exact(0);
    return ExactToken(mpq_class(1, mpz_class(1) << n)) * zeta_exact(2 * n - 1) / zeta_exact(2 * n);
}

cplx string_zeta(const FractalString& L, cplx s) {
    switch (L.variant) {
        case StringVariant::Ford:
            return ford_zeta(s);
        case StringVariant::Truncated: {
            cplx acc = 0.0;
            for (const auto& r : L.radii) acc += static_cast<double>(r.multiplicity) * std::exp(s * std::log(r.value));
            return acc;
        }
        case StringVariant::Analytic:
            for (const auto& p : L.poles)
                if (p.sigma == s) throw PoleError("string_zeta: pole");
            if (!L.evaluator) throw std::domain_error("analytic string has no evaluator");
            return L.evaluator(s);
    }
    return 0.0;
}

std::optional<ExactToken> string_zeta_exact(const FractalString& L, int s) {
    if (L.variant == StringVariant::Ford) {
        if (s == 0 || s >= 2) return ford_zeta_exact(s);
        throw PoleError("ford string: pole at s = " + std::to_string(s));
    }
    if (!L.exact_radii()) return std::nullopt;
    mpq_class acc = 0;
    for (const auto& r : L.radii) {
        mpq_class p = 1, base = s >= 0 ? *r.exact : mpq_class(1) / *r.exact;
        for (int i = 0; i < std::abs(s); ++i) p *= base;
        acc += r.multiplicity * p;
    }
    acc.canonicalize();
    return ExactToken(acc);
}

std::vector<PoleTerm> string_poles(const FractalString& L, const Strip& strip, int maxTrivial) {
    std::vector<PoleTerm> out;
    if (L.variant == StringVariant::Truncated) return out;
    if (L.variant == StringVariant::Analytic) {
        for (const auto& p : L.poles)
            if (strip.contains(p.sigma)) out.push_back(p);
    } else {
        if (strip.contains(1.0)) out.push_back({1.0, 3.0 / (2.0 * kPi * kPi)});
        for (int k = 1; k <= maxTrivial; ++k) {
            cplx s(-k, 0);
            if (!strip.contains(s)) continue;
            double num = std::ldexp(mpq_class(-bernoulli(2 * k + 2) / (2 * k + 2)).get_d(), k);
            out.push_back({s, num / (2.0 * riemann_zeta_derivative(cplx(-2 * k, 0)).real())});
        }
        for (double g : zeta_zero_ordinates()) {
            for (double sign : {1.0, -1.0}) {
                cplx rho(0.5, sign * g), sigma = rho / 2.0;
                if (!strip.contains(sigma)) continue;
                cplx res = std::pow(2.0, -sigma) * riemann_zeta(rho - 1.0) / (2.0 * riemann_zeta_derivative(rho));
                out.push_back({sigma, res});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const PoleTerm& a, const PoleTerm& b) {
        if (a.sigma.real() != b.sigma.real()) return a.sigma.real() < b.sigma.real();
        return a.sigma.imag() < b.sigma.imag();
    });
    return out;
}

cplx dirac_zeta_s4(cplx s, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("dirac_zeta_s4: radius must be positive");
    if (s == cplx(4.0, 0.0) || s == cplx(2.0, 0.0)) throw PoleError("dirac_zeta_s4: pole");
    return 4.0 / 3.0 * std::pow(r, s) * (riemann_zeta(s - 3.0) - riemann_zeta(s - 1.0));
}

ExactToken dirac_zeta_s4_exact(int s) {
    if (s == 4 || s == 2) throw PoleError("dirac_zeta_s4_exact: pole");
    return ExactToken(mpq_class(4, 3)) * (zeta_exact(s - 3) - zeta_exact(s - 1));
}

}  // namespace specexp
