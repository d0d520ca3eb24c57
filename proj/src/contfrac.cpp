#include "dioph/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dioph/error.hpp"

namespace dioph {

void ContinuedFraction::validate() const {
    if (quotients.empty())
        throw Error(errc::invalid_spec, "continued fraction must be nonempty");
    if (quotients[0] < 0)
        throw Error(errc::invalid_spec, "leading partial quotient must be >= 0");
    for (size_t i = 1; i < quotients.size(); ++i)
        if (quotients[i] < 1)
            throw Error(errc::invalid_spec, "partial quotients after the first must be >= 1",
                        {{"index", std::to_string(i)}});
}

ContinuedFraction fibonacci_word(const ExtremalSpec& spec) {
    if (spec.a == spec.b)
        throw Error(errc::invalid_spec, "fibonacci word letters must differ (a != b)");
    if (spec.a < 1 || spec.b < 1)
        throw Error(errc::invalid_spec, "fibonacci word letters must be positive");
    if (spec.length < 2)
        throw Error(errc::invalid_spec, "fibonacci word length must be >= 2");

    // Fixed point of a -> ab, b -> a, seeded with "a": iterate the
    // substitution until the word is long enough.
    std::vector<bool> word = {false};  // false = a, true = b
    while (word.size() < static_cast<size_t>(spec.length)) {
        std::vector<bool> next;
        next.reserve(word.size() * 2);
        for (bool c : word) {
            if (!c) {
                next.push_back(false);
                next.push_back(true);
            } else {
                next.push_back(false);
            }
        }
        word.swap(next);
    }

    ContinuedFraction cf;
    cf.quotients.reserve(spec.length + 1);
    cf.quotients.emplace_back(0);
    for (long i = 0; i < spec.length; ++i)
        cf.quotients.emplace_back(word[i] ? spec.b : spec.a);
    cf.validate();
    return cf;
}

std::vector<mpq_class> convergents(const ContinuedFraction& cf, size_t max_k) {
    cf.validate();
    max_k = std::min(max_k, cf.quotients.size() - 1);
    std::vector<mpq_class> out;
    out.reserve(max_k + 1);
    mpz_class p_prev = 1, q_prev = 0;
    mpz_class p = cf.quotients[0], q = 1;
    out.emplace_back(mpq_class(p, q));
    for (size_t k = 1; k <= max_k; ++k) {
        mpz_class pn = cf.quotients[k] * p + p_prev;
        mpz_class qn = cf.quotients[k] * q + q_prev;
        p_prev = p; q_prev = q;
        p = pn; q = qn;
        mpq_class c(p, q);
        c.canonicalize();
        out.push_back(c);
    }
    return out;
}

mpq_class cf_exact_value(const ContinuedFraction& cf) {
    auto cs = convergents(cf, cf.quotients.size() - 1);
    return cs.back();
}

Interval cf_eval(const ContinuedFraction& cf, mpfr_prec_t target_bits) {
    cf.validate();
    mpz_class p_prev = 1, q_prev = 0;
    mpz_class p = cf.quotients[0], q = 1;
    // |value - p_k/q_k| < 1/(q_k q_{k+1}); consecutive convergents bracket.
    for (size_t k = 1; k < cf.quotients.size(); ++k) {
        mpz_class pn = cf.quotients[k] * p + p_prev;
        mpz_class qn = cf.quotients[k] * q + q_prev;
        p_prev = p; q_prev = q;
        p = pn; q = qn;
        if (k >= 2) {
            // gap between the last two convergents is 1/(q_{k-1} q_k)
            mpz_class denom = q * q_prev;
            if (mpz_sizeinbase(denom.get_mpz_t(), 2) >= static_cast<size_t>(target_bits) + 2) {
                mpq_class a(p_prev, q_prev), b(p, q);
                a.canonicalize(); b.canonicalize();
                if (a > b) std::swap(a, b);
                return Interval::of_mpq_pair(a, b, target_bits + 16);
            }
        }
    }
    if (cf.quotients.size() == 1) {
        // integer value, exact
        return Interval::exact_mpz(cf.quotients[0], std::max<mpfr_prec_t>(target_bits, 64));
    }
    throw Error(errc::insufficient_depth,
                "continued fraction too short for requested precision",
                {{"terms", std::to_string(cf.quotients.size())},
                 {"target_bits", std::to_string(target_bits)}});
}

Zeta::Zeta(ContinuedFraction cf, std::string spec_string, mpfr_prec_t base_bits)
    : cf_(std::move(cf)), spec_(std::move(spec_string)), base_bits_(base_bits) {
    cf_.validate();
}

const Interval& Zeta::enclosure(mpfr_prec_t bits) const {
    auto it = cache_.find(bits);
    if (it != cache_.end()) return it->second;
    Interval iv = cf_eval(cf_, bits);
    return cache_.emplace(bits, std::move(iv)).first->second;
}

const std::vector<Interval>& Zeta::power_enclosures(int n, mpfr_prec_t bits) const {
    auto key = std::make_pair(n, bits);
    auto it = pow_cache_.find(key);
    if (it != pow_cache_.end()) return it->second;
    std::vector<Interval> p = powers(enclosure(bits), n, bits + 16);
    return pow_cache_.emplace(key, std::move(p)).first->second;
}

double Zeta::to_double() const { return enclosure(128).mid(); }

namespace {

// Quotients of the fib word average ~0.63 nats of denominator growth per
// term; pad generously so cf_eval always meets its budget.
long default_fib_length(mpfr_prec_t bits) {
    return static_cast<long>(static_cast<double>(bits) * 0.70722 / 0.8 + 96);
}

} // namespace

std::shared_ptr<Zeta> zeta_from_spec(const std::string& spec, mpfr_prec_t bits) {
    if (spec.rfind("fib:", 0) == 0) {
        std::string rest = spec.substr(4);
        std::replace(rest.begin(), rest.end(), ',', ' ');
        std::istringstream iss(rest);
        ExtremalSpec es;
        if (!(iss >> es.a >> es.b))
            throw Error(errc::invalid_spec, "expected fib:a,b[,length]", {{"spec", spec}});
        if (!(iss >> es.length)) es.length = default_fib_length(bits);
        return std::make_shared<Zeta>(fibonacci_word(es), spec, bits);
    }
    if (spec.rfind("cf-file:", 0) == 0) {
        std::string path = spec.substr(8);
        std::ifstream in(path);
        if (!in) throw Error(errc::io_error, "cannot open continued fraction file", {{"path", path}});
        ContinuedFraction cf;
        std::string line;
        while (std::getline(in, line)) {
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            cf.quotients.emplace_back(line.substr(first));
        }
        cf.validate();
        return std::make_shared<Zeta>(std::move(cf), spec, bits);
    }
    throw Error(errc::invalid_spec, "unknown zeta spec (use fib:a,b[,len] or cf-file:<path>)",
                {{"spec", spec}});
}

} // namespace dioph
