// Timing harness comparing the serial reference kernels against the
// OpenMP-parallel ones: sparse multiply, row reduction, column assembly.

#include "hdjac/higher.hpp"
#include "hdjac/linalg.hpp"
#include "hdjac/poly.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hdjac;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

PolyMod random_poly(std::mt19937_64& rng, std::uint32_t arity, std::uint32_t p,
                    std::uint32_t deg, std::size_t nterms) {
    std::uniform_int_distribution<std::uint32_t> dcoef(1, p - 1);
    std::uniform_int_distribution<std::uint32_t> dexp(0, deg);
    PolyMod r(arity, p);
    std::vector<PolyMod::Term> terms;
    for (std::size_t i = 0; i < nterms; ++i) {
        Monomial m(arity);
        for (std::uint32_t k = 0; k < arity; ++k) m.exps[k] = dexp(rng);
        terms.emplace_back(std::move(m), dcoef(rng));
    }
    return PolyMod::from_terms(arity, p, std::move(terms));
}

template <class F>
double time_best_of(int reps, F&& fn) {
    double best = 1e100;
    for (int i = 0; i < reps; ++i) {
        auto t0 = Clock::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

void bench_mul(std::mt19937_64& rng) {
    const std::uint32_t p = 5;
    for (std::size_t nterms : {200, 800, 2000}) {
        PolyMod a = random_poly(rng, 3, p, 30, nterms);
        PolyMod b = random_poly(rng, 3, p, 30, nterms);
        PolyMod r1(3, p), r2(3, p);
        double ts = time_best_of(3, [&] { r1 = mul_serial(a, b); });
        double tp = time_best_of(3, [&] { r2 = mul_parallel(a, b); });
        bool same = r1 == r2;
        std::printf("mul      n=%5zu x %5zu  serial %8.4fs  parallel %8.4fs  speedup %5.2fx  %s\n",
                    a.terms().size(), b.terms().size(), ts, tp, ts / tp,
                    same ? "match" : "MISMATCH");
    }
}

void bench_rref(std::mt19937_64& rng) {
    const std::uint32_t p = 3;
    std::uniform_int_distribution<std::uint32_t> dv(0, p - 1);
    for (std::size_t n : {200, 500, 900}) {
        ModMatrix base(n, n + 20, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n + 20; ++j) base.at(i, j) = dv(rng);
        ModMatrix m1 = base, m2 = base;
        double ts = time_best_of(3, [&] {
            m1 = base;
            rref_serial(m1);
        });
        double tp = time_best_of(3, [&] {
            m2 = base;
            rref_parallel(m2);
        });
        bool same = m1 == m2;
        std::printf("rref     %4zu x %4zu         serial %8.4fs  parallel %8.4fs  speedup %5.2fx  %s\n",
                    n, n + 20, ts, tp, ts / tp, same ? "match" : "MISMATCH");
    }
}

void bench_assembly() {
    const std::uint32_t p = 3;
    std::vector<PolyMod> F{[&] {
        PolyMod f(2, p);
        f.add_term(Monomial({1, 0}), 1);
        f.add_term(Monomial({0, 3}), -1);
        return f;
    }()};
    HDSpec spec = HDSpec::canonical(F, 24);
    for (std::uint32_t dmax : {10, 16, 22}) {
        auto mons = monomials_up_to_degree(2, dmax);
        std::vector<TruncatedSeries> c1, c2;
        double ts = time_best_of(3, [&] { c1 = phi_on_monomials(spec, mons, false); });
        double tp = time_best_of(3, [&] { c2 = phi_on_monomials(spec, mons, true); });
        bool same = c1.size() == c2.size();
        for (std::size_t i = 0; same && i < c1.size(); ++i) same = c1[i] == c2[i];
        std::printf("assembly %4zu columns        serial %8.4fs  parallel %8.4fs  speedup %5.2fx  %s\n",
                    mons.size(), ts, tp, ts / tp, same ? "match" : "MISMATCH");
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 42;
    std::mt19937_64 rng(seed);
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; parallel kernels fall back to serial\n");
#endif
    bench_mul(rng);
    bench_rref(rng);
    bench_assembly();
    return 0;
}
