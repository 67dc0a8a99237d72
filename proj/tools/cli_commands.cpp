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

#include "cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "specexp/bell.hpp"
#include "specexp/bridge.hpp"
#include "specexp/expansion.hpp"
#include "specexp/pscc.hpp"
#include "specexp/specfun.hpp"
#include "specexp/symcore.hpp"
#include "specexp/zeta.hpp"

namespace specexp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool one_of(const std::string& v, std::initializer_list<const char*> allowed) {
    return std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return v == a; });
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
    std::istringstream in(v);
    T x{};
    in >> x;
    if (!in || !in.eof()) throw ValidationError("config: bad value for " + key + ": '" + v + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (one_of(v, {"1", "true", "yes", "on"})) return true;
    if (one_of(v, {"0", "false", "no", "off"})) return false;
    throw ValidationError("config: bad boolean for " + key + ": '" + v + "'");
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

}  // namespace

void RunConfig::validate() const {
    if (!one_of(format, {"text", "latex", "json", "csv"})) throw ValidationError("unknown format '" + format + "'");
    if (maxOrder < 0) throw ValidationError("max-order must be >= 0");
    if (maxM && *maxM < 0) throw ValidationError("maxM must be >= 0");
    if (lambda && !(*lambda > 0.0)) throw ValidationError("lambda must be > 0");
    if (tolerance && !(*tolerance > 0.0)) throw ValidationError("tolerance must be > 0");
    if (!one_of(form, {"ab", "a"})) throw ValidationError("form must be ab or a");
    if (!one_of(geometry, {"s4", "rw"})) throw ValidationError("geometry must be s4 or rw");
    if (!one_of(testfn, {"heat", "quartic"})) throw ValidationError("testfn must be heat or quartic");
    if (!one_of(expansion, {"action", "heat"})) throw ValidationError("expansion must be action or heat");
    if (!one_of(suite, {"bridge", "dawson", "mellin", "bell", "all"}))
        throw ValidationError("suite must be bridge, dawson, mellin, bell or all");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path + ":" + std::to_string(lineNo) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config(RunConfig& c, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "order") c.order = parse_number<int>(k, v);
        else if (k == "max-order") c.maxOrder = parse_number<int>(k, v);
        else if (k == "form") c.form = v;
        else if (k == "check-golden") c.checkGolden = parse_bool(k, v);
        else if (k == "family") c.family = v;
        else if (k == "H") c.H = parse_number<double>(k, v);
        else if (k == "t") c.t = parse_number<double>(k, v);
        else if (k == "maxM") c.maxM = parse_number<int>(k, v);
        else if (k == "string") c.string = v;
        else if (k == "geometry") c.geometry = v;
        else if (k == "lambda") c.lambda = parse_number<double>(k, v);
        else if (k == "testfn") c.testfn = v;
        else if (k == "expansion") c.expansion = v;
        else if (k == "reconcile-paper") c.reconcile = parse_bool(k, v);
        else if (k == "suite") c.suite = v;
        else if (k == "seed") c.seed = parse_number<std::uint64_t>(k, v);
        else if (k == "tolerance") c.tolerance = parse_number<double>(k, v);
        else if (k == "report") c.reportPath = v;
        else if (k == "format") c.format = v;
        else throw ValidationError("config: unknown key '" + k + "'");
    }
}

// ---------------------------------------------------------------------------
// coeff

namespace {

std::optional<fs::path> golden_file(int M, const std::string& form) {
    fs::path p = fs::path(data_directory()) / "golden" / ("a" + std::to_string(2 * M) + "_" + form + ".json");
    if (fs::exists(p)) return p;
    return std::nullopt;
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    return json::parse(in);
}

}  // namespace

int cmd_coeff(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.order < 0) throw ValidationError("coeff: --order is required and must be >= 0");
    if (cfg.order > cfg.maxOrder)
        throw ValidationError("coeff: order " + std::to_string(cfg.order) + " exceeds the maximum " +
                              std::to_string(cfg.maxOrder) + " (raise --max-order)");
    if (cfg.format == "csv") throw ValidationError("coeff: format must be text, latex or json");

    const int M = cfg.order;
    SymPoly ab = a2M(M);
    std::optional<AFormPoly> af;
    if (cfg.form == "a") af = to_a_form(ab);

    if (cfg.format == "json") out << (af ? to_json(*af) : to_json(ab)).dump() << "\n";
    else if (cfg.format == "latex") out << (af ? to_latex(*af) : to_latex(ab)) << "\n";
    else out << (af ? to_text(*af) : to_text(ab)) << "\n";

    if (!cfg.checkGolden) return kOk;

    // The a-form goldens exist only for low orders; above them the ab-form
    // golden is converted, which is how the a-form is defined anyway.
    bool match = false;
    std::string used;
    if (af) {
        if (auto p = golden_file(M, "a")) {
            match = aform_from_json(read_json(*p)) == *af;
            used = p->filename().string();
        } else if (auto q = golden_file(M, "ab")) {
            match = to_a_form(sympoly_from_json(read_json(*q))) == *af;
            used = q->filename().string() + " (converted)";
        }
    } else if (auto p = golden_file(M, "ab")) {
        match = sympoly_from_json(read_json(*p)) == ab;
        used = p->filename().string();
    }
    if (used.empty()) throw ValidationError("coeff: no golden file for order " + std::to_string(M));
    err << "golden " << used << ": " << (match ? "match" : "MISMATCH") << "\n";
    return match ? kOk : kGoldenMismatch;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    if (cfg.family.empty()) throw ValidationError("eval: --family is required");
    if (!cfg.t) throw ValidationError("eval: --t is required");
    ScaleFactor a;
    try {
        a.family = ScaleFactor::parse_family(cfg.family);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    if (a.family == ScaleFamily::User) throw ValidationError("eval: the user family needs a library callback");
    a.H = cfg.H;
    const int maxM = cfg.maxM.value_or(2);
    if (maxM > cfg.maxOrder)
        throw ValidationError("eval: maxM exceeds the maximum order " + std::to_string(cfg.maxOrder));
    const double t = *cfg.t;
    std::vector<HeatCoefficient> rows;
    try {
        double a0 = a.derivative(0, t);
        if (!std::isfinite(a0) || a0 == 0.0) throw std::domain_error("a(t) vanishes or is singular");
        rows = heat_trace_series(maxM, a, t);
    } catch (const std::domain_error& e) {
        throw ValidationError("eval: " + std::string(e.what()) + " at t = " + fmt(t));
    }
    for (const auto& r : rows)
        if (!std::isfinite(r.value)) throw ValidationError("eval: singular coefficient at t = " + fmt(t));

    if (cfg.format == "json") {
        json j;
        j["family"] = cfg.family;
        j["H"] = cfg.H;
        j["t"] = t;
        j["rows"] = json::array();
        for (std::size_t M = 0; M < rows.size(); ++M)
            j["rows"].push_back({{"M", M}, {"power", rows[M].power}, {"value", rows[M].value}});
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "exponent,re,im,kind\n";
        for (const auto& r : rows) out << r.power << "," << fmt(r.value) << ",0,bulk\n";
    } else if (cfg.format == "latex") {
        out << "\\begin{tabular}{rr}\n$2M-4$ & $a_{2M}(t)$ \\\\\n\\hline\n";
        for (const auto& r : rows) out << r.power << " & " << fmt(r.value) << " \\\\\n";
        out << "\\end{tabular}\n";
    } else {
        out << "# family=" << cfg.family << " H=" << fmt(cfg.H) << " t=" << fmt(t) << "\n";
        out << std::left << std::setw(4) << "M" << std::setw(8) << "2M-4" << "a_2M(t)\n";
        for (std::size_t M = 0; M < rows.size(); ++M)
            out << std::setw(4) << M << std::setw(8) << rows[M].power << fmt(rows[M].value) << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// pscc

namespace {

FractalString resolve_string(const std::string& name) {
    if (name == "ford") return FractalString::ford();
    std::vector<fs::path> candidates = {name, fs::path(data_directory()) / "strings" / name,
                                        fs::path(data_directory()) / "strings" / (name + ".json")};
    for (const auto& p : candidates)
        if (fs::is_regular_file(p)) {
            try {
                return FractalString::load(p.string());
            } catch (const json::exception& e) {
                throw ValidationError("string descriptor " + p.string() + ": " + e.what());
            }
        }
    throw ValidationError("unknown string '" + name + "' (use ford or a descriptor path)");
}

}  // namespace

int cmd_pscc(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.reconcile) {
        if (cfg.string != "ford" || cfg.geometry != "s4")
            throw ValidationError("pscc: --reconcile-paper applies to --string ford --geometry s4");
        auto rep = reconcile_ford_packing();
        if (cfg.format == "json") out << rep.to_json().dump(2) << "\n";
        else out << rep.to_text();
        return rep.pass ? kOk : kNumericFailure;
    }

    FractalString L = resolve_string(cfg.string);
    const bool ford = L.variant == StringVariant::Ford;
    // Ford: the bulk point sigma = -2 (M = 3) is a trivial pole of zeta_L.
    const int maxM = cfg.maxM.value_or(ford ? 2 : 3);
    if (maxM > cfg.maxOrder)
        throw ValidationError("pscc: maxM exceeds the maximum order " + std::to_string(cfg.maxOrder));

    Geometry g = Geometry::s4();
    if (cfg.geometry == "rw") {
        if (cfg.family.empty() || !cfg.t) throw ValidationError("pscc: --geometry rw needs --family and --t");
        RWGeometry rw;
        try {
            rw.a.family = ScaleFactor::parse_family(cfg.family);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
        rw.a.H = cfg.H;
        rw.t = *cfg.t;
        g = Geometry::robertson_walker(rw);
    }
    TestFunctionMoments f = cfg.testfn == "quartic" ? TestFunctionMoments::quartic() : TestFunctionMoments::heat();

    std::vector<ExpansionTerm> terms;
    try {
        terms = cfg.expansion == "heat" ? round_heat_expansion(L, maxM, g) : spectral_action(L, f, maxM, g);
    } catch (const PoleError& e) {
        throw ValidationError(std::string("pscc: ") + e.what());
    }

    std::optional<double> total;
    if (cfg.lambda) {
        // the heat expansion is in tau = 1/Lambda
        double x = cfg.expansion == "heat" ? 1.0 / *cfg.lambda : *cfg.lambda;
        total = evaluate_expansion(terms, x);
    }

    if (cfg.format == "json") {
        json j;
        j["string"] = cfg.string;
        j["geometry"] = cfg.geometry;
        j["expansion"] = cfg.expansion;
        j["testfn"] = f.name;
        j["maxM"] = maxM;
        j["terms"] = to_json(terms);
        if (total) {
            j["lambda"] = *cfg.lambda;
            j["value"] = *total;
        }
        out << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << to_csv(terms);
    } else if (cfg.format == "latex") {
        throw ValidationError("pscc: format must be text, json or csv");
    } else {
        out << "# string=" << cfg.string << " geometry=" << cfg.geometry << " expansion=" << cfg.expansion
            << " testfn=" << f.name << " maxM=" << maxM << "\n";
        out << to_table(terms);
        if (total) out << "# sum at " << (cfg.expansion == "heat" ? "tau = 1/" : "Lambda = ") << fmt(*cfg.lambda)
                       << ": " << fmt(*total) << "\n";
    }
    (void)err;
    return kOk;
}

// ---------------------------------------------------------------------------
// verify

namespace {

struct Check {
    std::string suite;
    std::string name;
    double error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

class Verifier {
  public:
    Verifier(std::uint64_t seed, std::optional<double> tol) : rng_(seed), tol_(tol) {}

    void bridge();
    void bell();
    void dawson();
    void mellin();

    const std::vector<Check>& checks() const { return checks_; }

  private:
    double tol(double dflt) const { return tol_.value_or(dflt); }
    void add(Check c) { checks_.push_back(std::move(c)); }
    void exact(const std::string& suite, const std::string& name, bool ok, std::string detail = {}) {
        add({suite, name, ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)});
    }
    void numeric(const std::string& suite, const std::string& name, const Verification& v, double t) {
        add({suite, name, v.error, t, v.error <= t, "lhs=" + fmt(v.lhs.real()) + " rhs=" + fmt(v.rhs.real())});
    }
    std::vector<double> generic_u(int n);

    std::mt19937_64 rng_;
    std::optional<double> tol_;
    std::vector<Check> checks_;
};

void Verifier::bridge() {
    exact("bridge", "x1^2 = 1/12 exact", moment_product({{1, 2}}) == mpq_class(1, 12) &&
                                              x1_even_moment(1) == mpq_class(1, 12));
    // Shuffle route against a direct sum over orderings of the monomial route.
    std::uniform_int_distribution<int> letter(1, 3), mult(1, 2);
    for (int k = 0; k < 4; ++k) {
        MomentSpec s;
        int w = 0;
        while (w < 2) {
            int i = letter(rng_), m = mult(rng_);
            if (w + i * m > 6) break;
            s[i] += m;
            w += i * m;
        }
        std::vector<int> letters;
        for (auto [i, m] : s) letters.insert(letters.end(), m, i);
        std::sort(letters.begin(), letters.end());
        mpq_class sum = 0;
        do {
            sum += simplex_integrate(monomial_bridge_polynomial(letters), static_cast<int>(letters.size()));
        } while (std::next_permutation(letters.begin(), letters.end()));
        // distinct orderings were summed once; each stands for prod m! of them
        mpz_class rep = 1;
        for (auto [i, m] : s) {
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), m);
            rep *= f;
        }
        std::ostringstream nm;
        nm << "moment route";
        for (auto [i, m] : s) nm << " x" << i << "^" << m;
        exact("bridge", nm.str(), moment_product(s) == sum * mpq_class(rep), "value=" + moment_product(s).get_str());
    }
    auto mc = mc_estimate({{1, 2}}, 20000, 256, rng_());
    double dev = std::abs(mc.estimate - 1.0 / 12.0);
    add({"bridge", "x1^2 Monte Carlo (4 standard errors)", dev, 4 * mc.stdError, dev <= 4 * mc.stdError,
         "estimate=" + fmt(mc.estimate)});
}

void Verifier::bell() {
    const int pairs[3][2] = {{-3, 0}, {-5, 2}, {-1, 0}};
    for (const auto& rm : pairs)
        for (int order = 0; order <= 4; ++order) {
            auto d = crm_direct(rm[0], rm[1], order);
            auto b = crm_bell(rm[0], rm[1], order);
            bool same = d.size() == b.size();
            for (std::size_t i = 0; same && i < d.size(); ++i)
                same = d[i].scalar == b[i].scalar && d[i].sym == b[i].sym && d[i].xMultiset == b[i].xMultiset;
            same = same && integrate_bridge(d) == integrate_bridge(b);
            exact("bell",
                  "direct = bell r=" + std::to_string(rm[0]) + "/2 m=" + std::to_string(rm[1]) +
                      " order " + std::to_string(order),
                  same);
        }
    // B_{n,k}(1,1,...) are the Stirling numbers of the second kind.
    bool ok = true;
    for (int n = 1; n <= 10; ++n) {
        std::vector<mpq_class> ones(n, 1);
        std::vector<std::vector<mpz_class>> S(n + 1, std::vector<mpz_class>(n + 1, 0));
        S[0][0] = 1;
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= i; ++k) S[i][k] = k * S[i - 1][k] + S[i - 1][k - 1];
        for (int k = 1; k <= n; ++k) ok = ok && bell_polynomial<mpq_class>(n, k, ones) == mpq_class(S[n][k]);
    }
    exact("bell", "B_{n,k}(1,...,1) = S(n,k) for n <= 10", ok);
}

std::vector<double> Verifier::generic_u(int n) {
    std::uniform_real_distribution<double> mag(0.25, 4.0);
    std::bernoulli_distribution neg(0.3);
    for (;;) {
        std::vector<double> u(n);
        for (auto& x : u) x = mag(rng_) * (neg(rng_) ? -1.0 : 1.0);
        bool generic = true;
        for (int s = 0; s < n; ++s) {
            double acc = 0;
            for (int t = s; t < n; ++t) generic = generic && std::abs(acc += u[t]) > 0.1;
        }
        if (generic) return u;
    }
}

void Verifier::dawson() {
    for (int n = 1; n <= 4; ++n) {
        QuadratureSpec q;
        q.tolerance = tol(n == 4 ? 1e-5 : 1e-9);
        q.seed = rng_();
        int draws = n == 4 ? 1 : 3;
        for (int i = 0; i < draws; ++i) {
            auto u = generic_u(n);
            std::ostringstream nm;
            nm << "simplex n=" << n << " u=(";
            for (int j = 0; j < n; ++j) nm << (j ? "," : "") << std::setprecision(4) << u[j];
            nm << ")";
            numeric("dawson", nm.str(), verify_dawson_simplex(n, u, q), q.tolerance);
        }
    }
}

void Verifier::mellin() {
    std::uniform_real_distribution<double> U(0.2, 3.0), V(-3.0, 3.0), zr(0.3, 3.0), zi(-2.0, 2.0);
    QuadratureSpec q;
    q.tolerance = tol(1e-8);
    for (int i = 0; i < 3; ++i) {
        double u = U(rng_), v = V(rng_);
        std::string tag = "U=" + fmt(u).substr(0, 6) + " V=" + fmt(v).substr(0, 6);
        numeric("mellin", "gaussian multiplicity " + tag, verify_gaussian_multiplicity(u, v, q), q.tolerance);
        numeric("mellin", "z=1 collapse " + tag, verify_mellin_z1(u, v, tol(1e-9)), tol(1e-9));
        cplx z(zr(rng_), zi(rng_));
        auto r = verify_mellin_pm(z, u, v, q);
        double worst = std::max({r.minus.error, r.plus.error, r.pair.error, r.scaling.error});
        std::ostringstream nm;
        nm << "mellin pm z=" << std::setprecision(4) << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i "
           << tag;
        add({"mellin", nm.str(), worst, q.tolerance, r.pass && worst <= q.tolerance, {}});
    }
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    Verifier v(cfg.seed, cfg.tolerance);
    bool all = cfg.suite == "all";
    if (all || cfg.suite == "bridge") v.bridge();
    if (all || cfg.suite == "bell") v.bell();
    if (all || cfg.suite == "dawson") v.dawson();
    if (all || cfg.suite == "mellin") v.mellin();

    bool pass = std::all_of(v.checks().begin(), v.checks().end(), [](const Check& c) { return c.pass; });
    json report;
    report["suite"] = cfg.suite;
    report["seed"] = cfg.seed;
    report["pass"] = pass;
    report["checks"] = json::array();
    for (const auto& c : v.checks())
        report["checks"].push_back({{"suite", c.suite},
                                    {"name", c.name},
                                    {"error", c.error},
                                    {"tolerance", c.tolerance},
                                    {"pass", c.pass},
                                    {"detail", c.detail}});
    if (!cfg.reportPath.empty()) {
        std::ofstream f(cfg.reportPath);
        if (!f) throw ValidationError("cannot write report " + cfg.reportPath);
        f << report.dump(2) << "\n";
    }
    if (cfg.format == "json") {
        out << report.dump(2) << "\n";
    } else {
        for (const auto& c : v.checks())
            out << (c.pass ? "PASS " : "FAIL ") << c.suite << ": " << c.name << "  err=" << std::setprecision(3)
                << c.error << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
        out << (pass ? "all " : "") << std::count_if(v.checks().begin(), v.checks().end(),
                                                     [](const Check& c) { return c.pass; })
            << "/" << v.checks().size() << " checks passed\n";
    }
    return pass ? kOk : kNumericFailure;
}

}  // namespace specexp::cli
