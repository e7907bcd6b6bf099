#include "qes/physmap.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qes {

namespace {

long double approx(AlgebraicReal a) {
    if (auto r = a.as_rational()) return to_long_double(*r);
    a.refine_to(Rational(1, 1) / Rational(BigInt(1) << 100));
    return to_long_double(a.midpoint());
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

std::string poly_in_y(const std::vector<std::string>& coeffs) {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == "0") continue;
        if (!out.empty()) out += " + ";
        out += coeffs[i];
        if (i == 1) out += "*y";
        else if (i > 1) out += "*y^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::vector<SpectrumInput> spectrum_inputs(const RealSolutionSet& set) {
    std::vector<SpectrumInput> out;
    int i = 0;
    for (const auto& t : set.tuples) {
        SpectrumInput in;
        in.label = std::to_string(++i);
        for (const auto& v : t.values) {
            in.exact.push_back(to_string(v));
            in.s.push_back(approx(v));
        }
        out.push_back(std::move(in));
    }
    return out;
}

std::vector<SpectrumInput> spectrum_inputs(const std::vector<std::vector<Rational>>& tuples,
                                           const std::vector<std::string>& labels) {
    std::vector<SpectrumInput> out;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        SpectrumInput in;
        in.label = i < labels.size() ? labels[i] : std::to_string(i + 1);
        for (const auto& v : tuples[i]) {
            in.exact.push_back(to_string(v));
            in.s.push_back(to_long_double(v));
        }
        out.push_back(std::move(in));
    }
    return out;
}

PhysicalSpectrum spectrum_from_tuples(const QesSystem& sys, const std::vector<SpectrumInput>& tuples) {
    sys.validate();
    const PotentialSpec& p = sys.potential;
    if (!sys.D) throw std::invalid_argument("spectrum_from_tuples: D must be numeric");
    if (p.gamma() <= 0) throw std::invalid_argument("spectrum_from_tuples: gamma must be positive");
    PhysicalSpectrum out;
    out.q = p.q;
    out.N = sys.N;
    out.L = sys.L;
    out.D = *sys.D;
    out.gamma = p.gamma();
    out.alpha = p.alpha;
    ScalingParams sp = scaling(p.q, *sys.D, p.gamma());
    out.mu = *sp.mu_value;
    out.tau = *sp.tau_value;
    const long double D = to_long_double(*sys.D), g = to_long_double(p.gamma());
    auto recipe = reparam_couplings_symbolic(p);
    for (const auto& t : tuples) {
        if (t.s.size() != static_cast<std::size_t>(p.q)) throw std::invalid_argument("spectrum_from_tuples: tuple size");
        SpectrumLevel lv;
        lv.label = t.label;
        lv.s = t.exact;
        for (const auto& f : recipe) lv.couplings.push_back(evaluate(f, D, g, t.s));
        lv.energy = p.q ? -lv.couplings[0] : 0;
        bool rational = true;
        std::vector<Rational> exact;
        for (const auto& e : t.exact) {
            try {
                exact.push_back(parse_rational(e));
            } catch (const std::exception&) {
                rational = false;
                break;
            }
        }
        if (rational && p.q) {
            FormalSum e = reparam_couplings(exact, p)[0] * FormalTerm{-1, 0, 0, 0, 0};
            lv.energy_formal = to_string(e);
        }
        out.levels.push_back(std::move(lv));
    }
    return out;
}

std::string to_csv(const PhysicalSpectrum& s) {
    std::string out = "q,N,D,level,s,energy,couplings\n";
    for (const auto& lv : s.levels) {
        std::vector<std::string> c;
        for (auto v : lv.couplings) c.push_back(format_real(v));
        out += std::to_string(s.q) + "," + std::to_string(s.N) + "," + to_string(s.D) + "," + lv.label + "," +
               join(lv.s, ";") + "," + format_real(lv.energy) + "," + join(c, ";") + "\n";
    }
    return out;
}

std::string to_json(const PhysicalSpectrum& s) {
    nlohmann::ordered_json j;
    j["q"] = s.q;
    j["N"] = s.N;
    j["L"] = s.L;
    j["D"] = to_string(s.D);
    j["gamma"] = to_string(s.gamma);
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : s.alpha) a.push_back(to_string(x));
    j["alpha"] = a;
    j["tau"] = format_real(s.tau);
    j["mu"] = format_real(s.mu);
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (const auto& lv : s.levels) {
        nlohmann::ordered_json l;
        l["level"] = lv.label;
        l["s"] = lv.s;
        l["energy"] = format_real(lv.energy);
        if (!lv.energy_formal.empty()) l["energy_formal"] = lv.energy_formal;
        nlohmann::json c = nlohmann::json::array();
        for (auto v : lv.couplings) c.push_back(format_real(v));
        l["couplings"] = c;
        levels.push_back(l);
    }
    j["levels"] = levels;
    return j.dump(2);
}

std::vector<Rational> PotentialFamily::exponents() const {
    std::vector<Rational> e;
    for (const auto& s : slots) e.push_back(s.exponent);
    return e;
}

PotentialFamily potential_catalog(int q, int k) {
    if (q < 0) throw std::invalid_argument("potential_catalog: q >= 0");
    if (k < 1 || k > 2 * q + 2) throw std::invalid_argument("potential_catalog: 1 <= k <= 2q+2");
    PotentialFamily f;
    f.q = q;
    f.k = k;
    for (int j = 0; j <= 2 * q + 1; ++j) {
        Rational d = make_rational(2 * (j + 1), k) - 2;
        if (d == 0) f.energy_source = j;
        else f.slots.push_back({d, j});
    }
    std::sort(f.slots.begin(), f.slots.end(), [](const auto& a, const auto& b) { return a.exponent < b.exponent; });
    return f;
}

std::string to_string(const PotentialFamily& f) {
    static const char* names[] = {"a", "b", "c", "d", "f", "g", "h", "m", "n", "p", "u", "v", "w", "y", "z"};
    std::string out;
    std::size_t letter = 0;
    for (const auto& s : f.slots) {
        if (!out.empty()) out += " + ";
        if (s.source != 2 * f.q + 1) {
            if (letter >= std::size(names)) throw std::out_of_range("potential family too large to name");
            out += std::string(names[letter++]) + "*";
        }
        out += "r";
        if (s.exponent != 1) {
            if (s.exponent.get_den() == 1 && s.exponent > 0) out += "^" + to_string(s.exponent);
            else out += "^(" + to_string(s.exponent) + ")";
        }
    }
    return out;
}

std::vector<Rational> lambda_coefficients(const PotentialSpec& p) {
    std::vector<Rational> c;
    for (std::size_t k = 0; k < p.alpha.size(); ++k) c.push_back(p.alpha[k] / Rational(static_cast<long>(2 * k + 2)));
    return c;
}

std::string wave_function_string(const PotentialSpec& p, const std::vector<BigInt>& kernel) {
    std::vector<std::string> pk;
    for (const auto& v : kernel) pk.push_back(to_string(v));
    std::string lam;
    auto lc = lambda_coefficients(p);
    for (std::size_t k = 0; k < lc.size(); ++k) {
        if (lc[k] == 0) continue;
        if (!lam.empty()) lam += " + ";
        lam += to_string(lc[k]) + "*r^" + std::to_string(2 * k + 2);
    }
    return "(" + poly_in_y(pk) + ")*exp(-(" + (lam.empty() ? "0" : lam) + "))";
}

}  // namespace qes
