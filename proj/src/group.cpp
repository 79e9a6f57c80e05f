#include "qwalk/group.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <tuple>

namespace qwalk {

namespace {

// arithmetic modulo a fixed 63-bit prime, for cheap point orbits
constexpr uint64_t kPrime = 9223372036854775783ull;

struct FpDivByZero {};

struct Fp {
    uint64_t v;

    Fp() : v(0) {}
    Fp(long n) {
        long r = n % static_cast<long>(kPrime);
        if (r < 0) r += static_cast<long>(kPrime);
        v = static_cast<uint64_t>(r);
    }
    static Fp from_raw(uint64_t raw) {
        Fp f;
        f.v = raw % kPrime;
        return f;
    }
    Fp(const Rat& r) {
        uint64_t n = mpz_fdiv_ui(r.get_num().get_mpz_t(), kPrime);
        uint64_t d = mpz_fdiv_ui(r.get_den().get_mpz_t(), kPrime);
        *this = from_raw(n) / from_raw(d);
    }

    Fp operator+(Fp o) const { return from_raw(v + o.v); }
    Fp operator-(Fp o) const { return from_raw(v + kPrime - o.v); }
    Fp operator*(Fp o) const {
        return from_raw(static_cast<uint64_t>(
            static_cast<unsigned __int128>(v) * o.v % kPrime));
    }
    Fp operator/(Fp o) const {
        if (o.v == 0) throw FpDivByZero{};
        return *this * o.inv();
    }
    Fp pow(uint64_t e) const {
        Fp r(1l);
        Fp b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    Fp inv() const { return pow(kPrime - 2); }
    bool operator==(Fp o) const { return v == o.v; }
};

Fp eval_ratfunc_fp(const RatFunc& f, const std::array<Fp, NVARS>& vals) {
    Fp den = f.den().eval(vals);
    if (den.v == 0) throw FpDivByZero{};
    return f.num().eval(vals) / den;
}

// point orbit size, capped at bound; nullopt when the random point hits a
// degeneracy and a fresh seed is needed
std::optional<size_t> point_orbit_size(const BirationalPair& phi, const BirationalPair& psi,
                                       int bound, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> pick(2, kPrime - 2);
    std::array<Fp, NVARS> base{};
    base[static_cast<int>(Var::t)] = Fp::from_raw(pick(rng));
    base[static_cast<int>(Var::u)] = Fp::from_raw(pick(rng));
    base[static_cast<int>(Var::lam)] = Fp::from_raw(pick(rng));
    Fp x0 = Fp::from_raw(pick(rng)), y0 = Fp::from_raw(pick(rng));

    try {
        std::set<std::pair<uint64_t, uint64_t>> seen;
        std::vector<std::pair<Fp, Fp>> frontier{{x0, y0}};
        seen.insert({x0.v, y0.v});
        auto apply = [&](const BirationalPair& g, std::pair<Fp, Fp> p) {
            std::array<Fp, NVARS> vals = base;
            vals[static_cast<int>(Var::x)] = p.first;
            vals[static_cast<int>(Var::y)] = p.second;
            return std::make_pair(eval_ratfunc_fp(g.fx, vals), eval_ratfunc_fp(g.fy, vals));
        };
        while (!frontier.empty()) {
            std::vector<std::pair<Fp, Fp>> next;
            for (const auto& p : frontier) {
                for (const BirationalPair* g : {&phi, &psi}) {
                    auto q = apply(*g, p);
                    if (seen.insert({q.first.v, q.second.v}).second) {
                        next.push_back(q);
                        if (seen.size() >= static_cast<size_t>(bound)) return seen.size();
                    }
                }
            }
            frontier = std::move(next);
        }
        return seen.size();
    } catch (const FpDivByZero&) {
        return std::nullopt;
    }
}

using MapKey = std::tuple<Poly, Poly, Poly, Poly>;

MapKey key_of(const BirationalPair& g) {
    return {g.fx.num(), g.fx.den(), g.fy.num(), g.fy.den()};
}

}

BirationalPair identity_map() {
    return {RatFunc(Poly::var(Var::x)), RatFunc(Poly::var(Var::y))};
}

namespace {

Kernel nondegenerate_kernel(const StepModel& m) {
    Kernel k = build_kernel(m);
    if (k.at.is_zero() || k.a.is_zero() || k.ct.is_zero() || k.c.is_zero())
        fail(Err::DegenerateKernel,
             "group maps need steps on all four extreme rows and columns of the kernel");
    return k;
}

}

BirationalPair phi_map(const StepModel& m) {
    Kernel k = nondegenerate_kernel(m);
    return {RatFunc(k.ct, k.at * Poly::var(Var::x)), RatFunc(Poly::var(Var::y))};
}

BirationalPair psi_map(const StepModel& m) {
    Kernel k = nondegenerate_kernel(m);
    return {RatFunc(Poly::var(Var::x)), RatFunc(k.c, k.a * Poly::var(Var::y))};
}

BirationalPair compose(const BirationalPair& f, const BirationalPair& g) {
    std::array<RatFunc, NVARS> vals{RatFunc(Poly::var(Var::t)), g.fx, g.fy,
                                    RatFunc(Poly::var(Var::u)), RatFunc(Poly::var(Var::lam))};
    return {f.fx.eval(vals), f.fy.eval(vals)};
}

bool same_map(const BirationalPair& f, const BirationalPair& g) {
    return f.fx == g.fx && f.fy == g.fy;
}

OrbitReport orbit(const StepModel& m, int bound) {
    if (bound < 2) fail(Err::BadInput, "orbit bound must be at least 2");
    BirationalPair phi = phi_map(m);
    BirationalPair psi = psi_map(m);

    OrbitReport rep;
    rep.bound = bound;

    // cheap modular probe decides which regime we are in
    size_t probe = 0;
    bool have_probe = false;
    for (uint64_t seed = 12001; seed < 12001 + 40; ++seed) {
        auto r = point_orbit_size(phi, psi, bound, seed);
        if (r) {
            probe = *r;
            have_probe = true;
            break;
        }
    }
    if (!have_probe) fail(Err::Internal, "point orbit degenerate for every seed tried");
    if (probe >= static_cast<size_t>(bound)) {
        rep.finite = false;
        rep.order = bound;
        return rep;
    }

    // small orbit: certify exactly by symbolic closure; the point orbit size
    // lower-bounds the true order, so a modest cap suffices
    size_t cap = std::min<size_t>(static_cast<size_t>(bound), 4 * probe + 8);
    std::map<MapKey, size_t> index;
    std::vector<BirationalPair> elems;
    auto insert = [&](const BirationalPair& g) {
        MapKey k = key_of(g);
        auto it = index.find(k);
        if (it != index.end()) return false;
        index.emplace(std::move(k), elems.size());
        elems.push_back(g);
        return true;
    };
    insert(identity_map());
    size_t head = 0;
    while (head < elems.size()) {
        if (elems.size() > cap)
            fail(Err::Internal, "symbolic orbit exceeded the certified cap; inconsistent probes");
        BirationalPair cur = elems[head++];
        insert(compose(phi, cur));
        insert(compose(psi, cur));
    }
    rep.finite = true;
    rep.order = static_cast<int>(elems.size());
    rep.elements = std::move(elems);
    return rep;
}

}
