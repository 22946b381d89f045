#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <mutex>
#include <sstream>

#include "uskolem/arith/number_theory.hpp"
#include "uskolem/bhcount/bhcount.hpp"
#include "uskolem/decide/decide.hpp"
#include "uskolem/density/density.hpp"
#include "uskolem/error.hpp"
#include "uskolem/lrs/lrs.hpp"
#include "uskolem/skolem/skolem.hpp"
#ifdef USKOLEM_WITH_CLI
#include "uskolem/cli.hpp"
#endif

namespace py = pybind11;
using namespace uss;

namespace {

// Python ints cross the boundary as decimal strings.
BigInt to_big(const py::int_& v) { return BigInt(py::str(v).cast<std::string>()); }

py::int_ from_big(const BigInt& v) {
    static const py::object int_type = py::module_::import("builtins").attr("int");
    return int_type(v.get_str());
}

struct State {
    std::mutex mu;
    std::uint64_t sieve_limit = std::uint64_t{1} << 22;
    Limits limits;
    std::shared_ptr<const Context> ctx;
};

State& state() {
    static State s;
    return s;
}

std::shared_ptr<const Context> context() {
    auto& s = state();
    std::lock_guard lock(s.mu);
    if (!s.ctx) s.ctx = std::make_shared<const Context>(Context::with_sieve(s.sieve_limit, s.limits));
    return s.ctx;
}

void configure(std::optional<std::uint64_t> sieve_limit, std::optional<std::uint64_t> scan_cap,
               std::optional<std::uint64_t> exact_cap, std::optional<int> rounds, std::optional<unsigned> threads, std::optional<std::uint64_t> seed) {
    auto& s = state();
    std::lock_guard lock(s.mu);
    if (sieve_limit) s.sieve_limit = *sieve_limit;
    if (scan_cap) s.limits.scan_cap = *scan_cap;
    if (exact_cap) s.limits.exact_cap = *exact_cap;
    if (rounds) s.limits.probable_prime_rounds = *rounds;
    if (threads) s.limits.threads = *threads;
    if (seed) s.limits.seed = *seed;
    s.ctx.reset();
}

py::list reps_list(const std::vector<skolem::Representation>& reps) {
    py::list out;
    for (const auto& r : reps) out.append(py::make_tuple(r.q, from_big(r.P), r.a));
    return out;
}

lrs::Lrs make_lrs(const std::vector<py::int_>& coeffs, const std::vector<py::int_>& inits) {
    std::vector<BigInt> c, u;
    for (const auto& v : coeffs) c.push_back(to_big(v));
    for (const auto& v : inits) u.push_back(to_big(v));
    return lrs::Lrs::make(c, u);
}

bh::LinearFormPair make_pair(std::pair<std::int64_t, std::int64_t> f1, std::pair<std::int64_t, std::int64_t> f2) {
    return bh::LinearFormPair::make(f1.first, f1.second, f2.first, f2.second);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Universal Skolem Set membership, statistics and zero finding";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

    m.def("configure", &configure, py::arg("sieve_limit") = py::none(), py::arg("scan_cap") = py::none(),
          py::arg("exact_cap") = py::none(), py::arg("rounds") = py::none(), py::arg("threads") = py::none(), py::arg("seed") = py::none(),
          "Set limits for later calls; the prime table is rebuilt lazily.");

    m.def("window_params", [](int w) {
        const auto p = skolem::window_params(w);
        py::dict d;
        d["w"] = p.w;
        d["X"] = from_big(p.X);
        d["a_interval"] = py::make_tuple(p.a_interval.lo, p.a_interval.hi);
        d["b_interval"] = py::make_tuple(p.b_interval.lo, p.b_interval.hi);
        d["threshold"] = p.threshold;
        d["gap"] = p.gap;
        d["q_primes"] = p.q_primes;
        return d;
    });

    m.def("representations", [](const py::int_& n, int w) {
        const auto ctx = context();
        return reps_list(skolem::representations(to_big(n), skolem::window_params(w), *ctx));
    });

    m.def("in_s", [](const py::int_& n) {
        const auto ctx = context();
        const auto r = skolem::in_s(to_big(n), *ctx);
        py::dict d;
        d["member"] = r.member;
        d["window"] = r.window ? py::object(py::int_(*r.window)) : py::object(py::none());
        d["reps"] = reps_list(r.reps);
        d["reason"] = std::string(skolem::to_string(r.reason));
        bool probable = false;
        for (const auto& x : r.reps) probable = probable || x.certainty == arith::Certainty::ProbablePrime;
        d["certainty"] = probable ? "ProbablePrime" : "Prime";
        return d;
    });

    m.def(
        "enumerate_window",
        [](int w, std::optional<py::int_> lo, std::optional<py::int_> hi) {
            const auto ctx = context();
            std::optional<std::pair<BigInt, BigInt>> sub;
            if (lo || hi) sub = std::pair<BigInt, BigInt>{lo ? to_big(*lo) : pow2(w), hi ? to_big(*hi) : BigInt(pow2(w + 1))};
            std::vector<std::pair<BigInt, std::vector<skolem::Representation>>> found;
            {
                py::gil_scoped_release release;
                skolem::enumerate_window(w, sub, *ctx, [&](const BigInt& n, const auto& reps) { found.emplace_back(n, reps); });
            }
            py::list out;
            for (const auto& [n, reps] : found) out.append(py::make_tuple(from_big(n), reps_list(reps)));
            return out;
        },
        py::arg("w"), py::arg("lo") = py::none(), py::arg("hi") = py::none());

    m.def(
        "moment_scan",
        [](int w, std::optional<std::uint64_t> sample, std::uint64_t seed) {
            const auto ctx = context();
            std::optional<density::Sample> smp;
            if (sample) smp = density::Sample{*sample, seed};
            density::WindowStats s;
            {
                py::gil_scoped_release release;
                s = density::moment_scan(w, smp, *ctx);
            }
            py::dict d;
            d["w"] = s.w;
            d["X"] = from_big(s.X);
            d["scanned"] = s.scanned;
            d["M0"] = s.M0;
            d["M1"] = s.M1;
            d["M2"] = s.M2;
            d["excluded_correlated"] = s.excluded_correlated;
            d["correlated_any"] = s.correlated_any;
            d["members"] = s.members;
            d["density_estimate"] = s.density_estimate;
            d["mode"] = std::string(density::to_string(s.mode));
            return d;
        },
        py::arg("w"), py::arg("sample") = py::none(), py::arg("seed") = 1);

    m.def("first_moment_oracle", [](int w) { return density::first_moment_oracle(w, *context()); });
    m.def("second_moment_pair_count", [](int w) { return density::second_moment_pair_count(w, *context()); });

    m.def("mean_g_check", [](std::uint64_t Y) {
        const auto r = density::mean_g_check(Y);
        py::dict d;
        d["Y"] = r.Y;
        d["lhs"] = static_cast<double>(r.lhs);
        d["rhs"] = r.rhs;
        d["rel_err"] = r.rel_err;
        return d;
    });

    m.def("euler_products", [](std::uint64_t L) {
        const auto e = arith::euler_products(L);
        return py::make_tuple(e.value, e.tail_bound);
    });

    m.def(
        "bh_constant",
        [](std::pair<std::int64_t, std::int64_t> f1, std::pair<std::int64_t, std::int64_t> f2, std::uint64_t plimit) {
            const auto c = bh::bh_constant(make_pair(f1, f2), plimit);
            return py::make_tuple(c.C_f, c.tail_bound);
        },
        py::arg("f1"), py::arg("f2"), py::arg("prime_limit") = 1'000'000);

    m.def("count_pairs", [](std::pair<std::int64_t, std::int64_t> f1, std::pair<std::int64_t, std::int64_t> f2,
                            std::uint64_t X) { return bh::count_pairs(make_pair(f1, f2), X, *context()); });

    m.def("bound_report", [](std::pair<std::int64_t, std::int64_t> f1, std::pair<std::int64_t, std::int64_t> f2,
                             std::uint64_t X) {
        const auto r = bh::bound_report(make_pair(f1, f2), X, *context());
        py::dict d;
        d["pair"] = r.pair;
        d["X"] = r.X;
        d["admissible"] = r.admissible;
        d["actual"] = r.actual;
        d["C_f"] = r.C_f;
        d["bh_point"] = r.bh_point;
        d["bh_integral"] = r.bh_integral;
        d["brun8"] = r.brun8;
        d["wu"] = r.wu;
        d["sieve_rhs"] = r.sieve_rhs;
        return d;
    });

    m.def("term_exact", [](const std::vector<py::int_>& c, const std::vector<py::int_>& u, const py::int_& n) {
        return from_big(lrs::term_exact(make_lrs(c, u), to_big(n), context()->limits().exact_cap));
    });
    m.def("term_mod", [](const std::vector<py::int_>& c, const std::vector<py::int_>& u, const py::int_& n,
                         const py::int_& mod) { return from_big(lrs::term_mod(make_lrs(c, u), to_big(n), to_big(mod))); });

    m.def("is_degenerate", [](const std::vector<py::int_>& c, const std::vector<py::int_>& u) {
        const auto d = lrs::is_degenerate(lrs::minimize(make_lrs(c, u)));
        return py::make_tuple(d.degenerate, d.witness_order);
    });

    m.def(
        "find_zeros",
        [](const std::vector<py::int_>& c, const std::vector<py::int_>& u, const py::int_& N, bool probabilistic) {
            const auto ctx = context();
            const auto s = make_lrs(c, u);
            const BigInt limit = to_big(N);
            decide::ZeroReport r;
            {
                py::gil_scoped_release release;
                r = decide::find_zeros_in_s(s, limit, probabilistic ? decide::Policy::ProbabilisticOnly
                                                                    : decide::Policy::ExactBelowCap, *ctx);
            }
            py::dict d;
            py::list zeros;
            for (const auto& z : r.zeros) zeros.append(py::make_tuple(from_big(z.n), std::string(decide::to_string(z.certainty))));
            d["zeros"] = zeros;
            d["zero_progressions"] = r.zero_progressions;
            d["theorem_bound"] = r.theorem_bound ? py::object(py::str(r.theorem_bound->str())) : py::object(py::none());
            d["modulus"] = r.modulus;
            d["notes"] = r.notes;
            return d;
        },
        py::arg("coeffs"), py::arg("inits"), py::arg("max_n"), py::arg("probabilistic") = false);

    m.def("run_cli", [](const std::vector<std::string>& args) {
#ifdef USKOLEM_WITH_CLI
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
#else
        (void)args;
        throw std::runtime_error("built without the command-line front end");
#endif
    });
}
