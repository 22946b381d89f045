#include "uskolem/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "uskolem/bhcount/bhcount.hpp"
#include "uskolem/decide/decide.hpp"
#include "uskolem/density/density.hpp"
#include "uskolem/error.hpp"
#include "uskolem/lrs/lrs.hpp"
#include "uskolem/skolem/skolem.hpp"

namespace uss::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kSmallSieve = 1 << 16;
constexpr std::uint64_t kMaxAutoSieve = std::uint64_t{1} << 28;

std::optional<OutputFormat> parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "text") return OutputFormat::Text;
    return std::nullopt;
}

BigInt parse_big(const std::string& s, const char* what) {
    auto v = parse_bigint(s);
    if (!v) throw DomainError(std::string(what) + ": not an integer: " + s);
    return *v;
}

json big_json(const BigInt& v) {
    if (fits_u64(v)) return to_u64(v);
    if (v < 0 && mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
    return v.get_str();
}

std::pair<std::int64_t, std::int64_t> parse_form(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw DomainError("linear form must be written a,b: " + s);
    try {
        std::size_t used1 = 0, used2 = 0;
        const std::string lhs = s.substr(0, comma), rhs = s.substr(comma + 1);
        const long long a = std::stoll(lhs, &used1), b = std::stoll(rhs, &used2);
        if (used1 != lhs.size() || used2 != rhs.size()) throw std::invalid_argument(s);
        return {a, b};
    } catch (const std::logic_error&) {
        throw DomainError("linear form must be written a,b: " + s);
    }
}

json reps_json(const std::vector<skolem::Representation>& reps) {
    json a = json::array();
    for (const auto& r : reps) a.push_back(json::array({r.q, big_json(r.P), r.a}));
    return a;
}

std::string reps_text(const std::vector<skolem::Representation>& reps) {
    std::string s;
    for (const auto& r : reps) {
        if (!s.empty()) s += ',';
        s += std::to_string(r.q) + ":" + r.P.get_str() + ":" + std::to_string(r.a);
    }
    return s;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// State assembled while parsing, consumed by the subcommand handlers.
struct Invocation {
    Config cfg;
    std::string config_path;
    std::optional<std::uint64_t> sieve_limit, scan_cap, exact_cap, seed;
    std::optional<int> rounds;
    std::optional<unsigned> threads;
    std::string format, cache;
    bool json_flag = false;

    std::ostream* out = nullptr;
    std::ostream* err = nullptr;

    void finalize() {
        if (!config_path.empty()) cfg = Config::from_json_file(config_path);
        if (sieve_limit) cfg.sieve_limit = sieve_limit;
        if (scan_cap) cfg.scan_cap = *scan_cap;
        if (exact_cap) cfg.exact_cap = *exact_cap;
        if (seed) cfg.seed = *seed;
        if (rounds) cfg.probable_prime_rounds = *rounds;
        if (threads) cfg.threads = *threads;
        if (!cache.empty()) cfg.cache_path = cache;
        if (!format.empty()) cfg.output_format = *parse_format(format);
        if (json_flag) cfg.output_format = OutputFormat::Json;
        cfg.validate();
    }

    Context context(std::uint64_t required) const {
        const std::uint64_t limit = cfg.sieve_limit.value_or(std::clamp<std::uint64_t>(required, kSmallSieve, kMaxAutoSieve));
        Limits l;
        l.scan_cap = cfg.scan_cap;
        l.exact_cap = cfg.exact_cap;
        l.probable_prime_rounds = cfg.probable_prime_rounds;
        l.threads = cfg.threads;
        l.seed = cfg.seed;
        std::shared_ptr<const arith::PrimeTable> table =
            cfg.cache_path.empty() ? std::make_shared<const arith::PrimeTable>(arith::PrimeTable::build(limit))
                                   : load_or_build_cache(cfg.cache_path, limit, *err);
        return Context(std::move(table), l);
    }

    json envelope(const std::string& command, const Context& ctx) const {
        json j;
        j["schema"] = 1;
        j["command"] = command;
        j["provenance"] = {{"sieve_limit", ctx.primes().limit()},
                           {"scan_cap", cfg.scan_cap},
                           {"exact_cap", cfg.exact_cap},
                           {"probable_prime_rounds", cfg.probable_prime_rounds},
                           {"seed", cfg.seed}};
        return j;
    }

    void emit(const json& j) const { *out << j.dump() << '\n'; }
    bool json_out() const { return cfg.output_format == OutputFormat::Json; }
    bool csv_out() const { return cfg.output_format == OutputFormat::Csv; }
};

std::uint64_t sieve_for_n(const BigInt& n) {
    const BigInt half = n / 2 + 1;
    return fits_u64(half) ? to_u64(half) : kMaxAutoSieve;
}

void cmd_skolem_member(Invocation& inv, const std::string& n_text) {
    const BigInt n = parse_big(n_text, "n");
    if (n < 0) throw DomainError("n must be non-negative");
    const Context ctx = inv.context(std::min<std::uint64_t>(sieve_for_n(n), std::uint64_t{1} << 24));
    const auto m = skolem::in_s(n, ctx);
    bool probable = false;
    for (const auto& r : m.reps) probable = probable || r.certainty == arith::Certainty::ProbablePrime;
    if (inv.json_out()) {
        json j = inv.envelope("skolem member", ctx);
        j["n"] = big_json(n);
        j["member"] = m.member;
        j["window"] = m.window ? json(*m.window) : json(nullptr);
        j["reps"] = reps_json(m.reps);
        j["reason"] = std::string(skolem::to_string(m.reason));
        j["certainty"] = probable ? "ProbablePrime" : "Prime";
        j["windows_checked"] = m.windows_checked;
        if (m.window) j["provenance"]["X"] = big_json(pow2(*m.window));
        inv.emit(j);
        return;
    }
    *inv.out << n.get_str() << '\t' << (m.member ? "member" : "non-member") << '\t' << skolem::to_string(m.reason);
    if (m.window) *inv.out << "\tw=" << *m.window;
    *inv.out << '\t' << m.reps.size() << '\t' << reps_text(m.reps);
    if (probable) *inv.out << "\tProbablePrime";
    *inv.out << '\n';
}

void cmd_skolem_enum(Invocation& inv, int w, const std::string& from, const std::string& to) {
    std::optional<std::pair<BigInt, BigInt>> sub;
    if (!from.empty() || !to.empty()) {
        if (w < skolem::kMinWindow) throw DomainError("window exponent must be at least 10");
        sub = std::pair<BigInt, BigInt>{from.empty() ? pow2(w) : parse_big(from, "--from"),
                                        to.empty() ? BigInt(pow2(w + 1)) : parse_big(to, "--to")};
    }
    const std::uint64_t need = w >= 0 && w < 40 ? (std::uint64_t{1} << w) + 1 : kMaxAutoSieve;
    const Context ctx = inv.context(need);
    json members = json::array();
    std::uint64_t count = 0;
    if (inv.csv_out()) *inv.out << "n,r,reps\n";
    skolem::enumerate_window(w, sub, ctx, [&](const BigInt& n, const std::vector<skolem::Representation>& reps) {
        ++count;
        if (inv.json_out())
            members.push_back({{"n", big_json(n)}, {"r", reps.size()}, {"reps", reps_json(reps)}});
        else if (inv.csv_out())
            *inv.out << n.get_str() << ',' << reps.size() << ",\"" << reps_text(reps) << "\"\n";
        else
            *inv.out << n.get_str() << '\t' << reps.size() << '\t' << reps_text(reps) << '\n';
    });
    if (inv.json_out()) {
        json j = inv.envelope("skolem enum", ctx);
        j["provenance"]["w"] = w;
        j["provenance"]["X"] = big_json(pow2(w));
        j["count"] = count;
        j["members"] = std::move(members);
        inv.emit(j);
    }
}

void cmd_density_scan(Invocation& inv, int w, std::optional<std::uint64_t> sample) {
    const std::uint64_t need = w >= 0 && w < 40 ? (std::uint64_t{1} << w) + 1 : kSmallSieve;
    const Context ctx = inv.context(sample ? std::min<std::uint64_t>(need, std::uint64_t{1} << 22) : need);
    std::optional<density::Sample> smp;
    if (sample) smp = density::Sample{*sample, inv.cfg.seed};
    const auto s = density::moment_scan(w, smp, ctx);
    const auto pred = density::predictions(w);
    if (inv.csv_out()) {
        *inv.out << density::csv_header() << '\n' << density::csv_row(s) << '\n';
        return;
    }
    if (inv.json_out()) {
        json j = inv.envelope("density scan", ctx);
        j["provenance"]["w"] = w;
        j["provenance"]["X"] = big_json(s.X);
        j["mode"] = std::string(density::to_string(s.mode));
        if (s.sample) j["sample"] = {{"count", s.sample->count}, {"seed", s.sample->seed}};
        j["scanned"] = s.scanned;
        j["M0"] = s.M0;
        j["M1"] = s.M1;
        j["M2"] = s.M2;
        j["excluded_correlated"] = s.excluded_correlated;
        j["correlated_any"] = s.correlated_any;
        j["members"] = s.members;
        j["probable_tags"] = s.probable_tags;
        j["density_estimate"] = s.density_estimate;
        j["m1_pred"] = pred.m1_pred;
        j["m2_pred"] = pred.m2_pred;
        inv.emit(j);
        return;
    }
    // Sampled sums are scaled up to the full window before comparing with the predictions.
    const double scale = s.scanned == 0 ? 0.0 : (s.X.get_d() + 1.0) / static_cast<double>(s.scanned);
    *inv.out << "w=" << w << " X=" << s.X.get_str() << " mode=" << density::to_string(s.mode) << " scanned=" << s.scanned
             << "\nM0=" << s.M0 << " M1=" << s.M1 << " M2=" << s.M2 << " excluded_correlated=" << s.excluded_correlated
             << " members=" << s.members << "\ndensity_estimate=" << fmt(s.density_estimate)
             << " M1/m1_pred=" << fmt(scale * s.M1 / pred.m1_pred) << " M2/m2_pred=" << fmt(scale * s.M2 / pred.m2_pred) << '\n';
}

void cmd_mean_g(Invocation& inv, std::uint64_t Y) {
    const Context ctx = inv.context(kSmallSieve);
    const auto m = density::mean_g_check(Y);
    if (inv.json_out()) {
        json j = inv.envelope("density mean-g", ctx);
        j["Y"] = Y;
        j["lhs"] = static_cast<double>(m.lhs);
        j["rhs"] = m.rhs;
        j["rhs_tail"] = m.rhs_tail;
        j["rel_err"] = m.rel_err;
        inv.emit(j);
        return;
    }
    *inv.out << "Y=" << Y << " lhs=" << fmt(static_cast<double>(m.lhs)) << " rhs=" << fmt(m.rhs)
             << " rel_err=" << fmt(m.rel_err) << '\n';
}

std::uint64_t form_top(const bh::LinearFormPair& f, std::uint64_t X) {
    const BigInt top = std::max(BigInt(big_from_i64(f.a1()) * big_from_u64(X) + f.b1()),
                                BigInt(big_from_i64(f.a2()) * big_from_u64(X) + f.b2()));
    return top > 2 && fits_u64(top) ? to_u64(top) : 2;
}

bh::LinearFormPair make_pair(const std::string& f1, const std::string& f2) {
    const auto [a1, b1] = parse_form(f1);
    const auto [a2, b2] = parse_form(f2);
    return bh::LinearFormPair::make(a1, b1, a2, b2);
}

void cmd_bh_count(Invocation& inv, const std::string& f1, const std::string& f2, std::uint64_t X) {
    const auto pair = make_pair(f1, f2);
    const Context ctx = inv.context(form_top(pair, X));
    const auto c = bh::count_pairs(pair, X, ctx);
    if (inv.json_out()) {
        json j = inv.envelope("bh count", ctx);
        j["pair"] = pair.str();
        j["X"] = X;
        j["count"] = c;
        inv.emit(j);
        return;
    }
    *inv.out << pair.str() << " X=" << X << " count=" << c << '\n';
}

void cmd_bh_constant(Invocation& inv, const std::string& f1, const std::string& f2, std::uint64_t plimit) {
    const auto pair = make_pair(f1, f2);
    const Context ctx = inv.context(plimit);
    const auto* table = ctx.primes().limit() >= plimit ? &ctx.primes() : nullptr;
    const auto c = bh::bh_constant(pair, plimit, table);
    if (inv.json_out()) {
        json j = inv.envelope("bh constant", ctx);
        j["pair"] = pair.str();
        j["prime_limit"] = plimit;
        j["C_f"] = c.C_f;
        j["tail_bound"] = c.tail_bound;
        j["twin_constant"] = c.twin_constant;
        j["correction"] = c.correction;
        inv.emit(j);
        return;
    }
    *inv.out << pair.str() << " C_f=" << fmt(c.C_f) << " tail_bound=" << fmt(c.tail_bound) << " (C=" << fmt(c.twin_constant)
             << ", correction " << fmt(c.correction) << ")\n";
}

void cmd_bh_report(Invocation& inv, const std::string& f1, const std::string& f2, std::uint64_t X) {
    const auto pair = make_pair(f1, f2);
    const Context ctx = inv.context(std::max<std::uint64_t>(form_top(pair, X), 1'000'000));
    const auto r = bh::bound_report(pair, X, ctx);
    if (inv.csv_out()) {
        *inv.out << bh::csv_header() << '\n' << bh::csv_row(r) << '\n';
        return;
    }
    if (inv.json_out()) {
        json j = inv.envelope("bh report", ctx);
        j["pair"] = r.pair;
        j["X"] = r.X;
        j["admissible"] = r.admissible;
        j["actual"] = r.actual;
        j["C_f"] = r.C_f;
        j["bh_point"] = r.bh_point;
        j["bh_integral"] = r.bh_integral;
        j["brun8"] = r.brun8;
        j["wu"] = r.wu;
        j["sieve_rhs"] = r.sieve_rhs;
        j["within_wu"] = r.within_wu();
        j["within_brun8"] = r.within_brun8();
        inv.emit(j);
        return;
    }
    *inv.out << r.pair << " X=" << r.X << " actual=" << r.actual << " bh_integral=" << fmt(r.bh_integral)
             << " bh_point=" << fmt(r.bh_point) << " wu=" << fmt(r.wu) << (r.within_wu() ? " (holds)" : " (VIOLATED)")
             << " brun8=" << fmt(r.brun8) << " sieve_rhs=" << fmt(r.sieve_rhs) << '\n';
}

lrs::Lrs lrs_from(const std::string& spec, const std::string& coeffs, const std::string& inits) {
    if (!spec.empty()) return lrs::parse_lrs(spec);
    if (coeffs.empty() || inits.empty()) throw DomainError("give --lrs or both --coeffs and --inits");
    return lrs::parse_lrs("coeffs=" + coeffs + "; inits=" + inits);
}

void cmd_lrs_zeros(Invocation& inv, const lrs::Lrs& s, const std::string& max_n, bool probabilistic) {
    const BigInt N = parse_big(max_n, "--max-n");
    const Context ctx = inv.context(std::min<std::uint64_t>(sieve_for_n(N), std::uint64_t{1} << 25));
    const auto rep = decide::find_zeros_in_s(s, N, probabilistic ? decide::Policy::ProbabilisticOnly
                                                                 : decide::Policy::ExactBelowCap, ctx);
    if (inv.json_out()) {
        json j = inv.envelope("lrs zeros", ctx);
        j["lrs"] = lrs::format_lrs(s);
        j["searched_to"] = big_json(rep.searched_to);
        json zeros = json::array();
        for (const auto& z : rep.zeros) {
            json e = {{"n", big_json(z.n)}, {"certainty", std::string(decide::to_string(z.certainty))}};
            if (z.certainty == decide::Certainty::Probable) e["primes_used"] = z.primes_used;
            zeros.push_back(std::move(e));
        }
        j["zeros"] = std::move(zeros);
        j["zero_progressions"] = json::array();
        for (const auto& [r, m] : rep.zero_progressions) j["zero_progressions"].push_back({r, m});
        j["theorem_bound"] = rep.theorem_bound ? json(rep.theorem_bound->str()) : json(nullptr);
        j["modulus"] = rep.modulus;
        j["components"] = json::array();
        for (const auto& c : rep.components)
            j["components"].push_back({{"residue", c.residue},
                                       {"order", c.order},
                                       {"zero", c.zero},
                                       {"recurrence", c.recurrence},
                                       {"bound", c.bound ? json(c.bound->str()) : json(nullptr)}});
        j["members_seen"] = rep.members_seen;
        j["filtered_out"] = rep.filtered_out;
        j["notes"] = rep.notes;
        inv.emit(j);
        return;
    }
    *inv.out << "searched n <= " << rep.searched_to.get_str() << " (decomposition modulus " << rep.modulus << ")\n";
    for (const auto& z : rep.zeros) *inv.out << "zero\t" << z.n.get_str() << '\t' << decide::to_string(z.certainty) << '\n';
    for (const auto& [r, m] : rep.zero_progressions) *inv.out << "progression\t" << r << " mod " << m << '\n';
    if (rep.theorem_bound) *inv.out << "bound\t" << rep.theorem_bound->str() << '\n';
    for (const auto& n : rep.notes) *inv.out << "note\t" << n << '\n';
}

void cmd_lrs_degenerate(Invocation& inv, const lrs::Lrs& input) {
    const Context ctx = inv.context(kSmallSieve);
    const auto s = lrs::minimize(input);
    const auto d = lrs::is_degenerate(s);
    const auto dec = lrs::decompose(s);
    if (inv.json_out()) {
        json j = inv.envelope("lrs degenerate", ctx);
        j["lrs"] = lrs::format_lrs(input);
        j["minimal"] = lrs::format_lrs(s);
        j["degenerate"] = d.degenerate;
        j["witness_order"] = d.witness_order;
        j["unity_orders"] = d.unity_orders;
        j["modulus"] = dec.modulus;
        j["components"] = json::array();
        for (const auto& c : dec.components)
            j["components"].push_back({{"residue", c.residue}, {"zero", c.is_zero()}, {"recurrence", lrs::format_lrs(c.sequence)}});
        inv.emit(j);
        return;
    }
    *inv.out << "minimal: " << lrs::format_lrs(s) << '\n'
             << (d.degenerate ? "degenerate, witness order " + std::to_string(d.witness_order) : std::string("non-degenerate"))
             << '\n';
    for (const auto& c : dec.components)
        *inv.out << "component " << c.residue << " mod " << dec.modulus << ": "
                 << (c.is_zero() ? std::string("zero") : lrs::format_lrs(c.sequence)) << '\n';
}

void cmd_bounds(Invocation& inv, const std::string& spec, const std::string& coeffs, const std::string& inits,
                std::optional<int> w) {
    const Context ctx = inv.context(kSmallSieve);
    json j = inv.envelope("bounds", ctx);
    std::ostringstream text;
    if (!spec.empty() || !coeffs.empty()) {
        const auto s = lrs::minimize(lrs_from(spec, coeffs, inits));
        const BigInt A = decide::constant_A(s);
        j["lrs"] = lrs::format_lrs(s);
        j["order"] = s.order();
        j["A"] = big_json(A);
        j["root_bound"] = big_json(BigInt(A * s.order()));
        if (!s.zero && s.order() >= 2) j["zero_bound"] = decide::zero_bound(s).str();
        else j["zero_bound"] = nullptr;
        text << "k=" << s.order() << " A=" << A.get_str() << " root bound kA=" << BigInt(A * s.order()).get_str()
             << " zero bound " << (j["zero_bound"].is_null() ? std::string("n/a (order < 2)") : j["zero_bound"].get<std::string>())
             << '\n';
    }
    if (w) {
        const auto p = skolem::window_params(*w);
        j["window"] = {{"w", p.w},
                       {"X", big_json(p.X)},
                       {"a_interval", {p.a_interval.lo, p.a_interval.hi}},
                       {"b_interval", {p.b_interval.lo, p.b_interval.hi}},
                       {"threshold", p.threshold},
                       {"gap", p.gap},
                       {"q_primes", p.q_primes}};
        text << "w=" << p.w << " A=[" << fmt(p.a_interval.lo) << ", " << fmt(p.a_interval.hi) << "] B=["
             << fmt(p.b_interval.lo) << ", " << fmt(p.b_interval.hi) << "] tau=" << fmt(p.threshold)
             << " gap=" << fmt(p.gap) << " q-primes=" << p.q_primes.size() << '\n';
    }
    if (!j.contains("lrs") && !j.contains("window")) throw DomainError("bounds: give a recurrence and/or --window");
    if (inv.json_out()) inv.emit(j);
    else *inv.out << text.str();
}

}  // namespace

Config Config::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot read config file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw DomainError("config file must hold a JSON object");
    Config c;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "sieve_limit") c.sieve_limit = v.get<std::uint64_t>();
            else if (key == "cache_path") c.cache_path = v.get<std::string>();
            else if (key == "scan_cap") c.scan_cap = v.get<std::uint64_t>();
            else if (key == "exact_cap") c.exact_cap = v.get<std::uint64_t>();
            else if (key == "probable_prime_rounds") c.probable_prime_rounds = v.get<int>();
            else if (key == "threads") c.threads = v.get<unsigned>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "output_format") {
                const auto fmt = parse_format(v.get<std::string>());
                if (!fmt) throw DomainError("output_format must be json, csv or text");
                c.output_format = *fmt;
            } else {
                throw DomainError("unknown config key: " + key);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad config value: ") + e.what());
    }
    c.validate();
    return c;
}

void Config::validate() const {
    if ((sieve_limit && *sieve_limit < 2) || scan_cap == 0 || exact_cap == 0 || probable_prime_rounds < 0 || threads == 0)
        throw DomainError("config: caps, rounds and threads must be positive and sieve_limit at least 2");
}

std::shared_ptr<const arith::PrimeTable> load_or_build_cache(const std::string& cache_path, std::uint64_t limit,
                                                             std::ostream& warn) {
    auto table = arith::PrimeTable::build(2);
    std::string why;
    if (arith::PrimeTable::load(cache_path, limit, table, &why)) return std::make_shared<const arith::PrimeTable>(std::move(table));
    if (why != "missing") warn << "warning: sieve cache " << cache_path << " rejected (" << why << "); rebuilding\n";
    table = arith::PrimeTable::build(limit);
    try {
        table.save(cache_path);
    } catch (const Error& e) {
        warn << "warning: " << e.what() << "; continuing without a cache\n";
    }
    return std::make_shared<const arith::PrimeTable>(std::move(table));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Universal Skolem Set experiments", "uskolem"};
    app.fallthrough();
    app.require_subcommand(1);
    Invocation inv;
    inv.out = &out;
    inv.err = &err;

    app.add_option("--config", inv.config_path, "JSON config file (flags override it)");
    app.add_option("--sieve-limit", inv.sieve_limit, "prime table limit (default: sized per command)");
    app.add_option("--cache", inv.cache, "sieve cache file");
    app.add_option("--scan-cap", inv.scan_cap, "maximum integers per window scan");
    app.add_option("--exact-cap", inv.exact_cap, "maximum index for exact recurrence evaluation");
    app.add_option("--rounds", inv.rounds, "extra random rounds for probable primes");
    app.add_option("--threads", inv.threads, "worker threads");
    app.add_option("--seed", inv.seed, "seed for every randomized step");
    app.add_option("--format", inv.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_flag("--json", inv.json_flag, "shorthand for --format json");

    std::function<void()> action;

    auto* skolem_cmd = app.add_subcommand("skolem", "membership and enumeration")->require_subcommand(1);
    std::string member_n;
    auto* member = skolem_cmd->add_subcommand("member", "test n for membership");
    member->add_option("n", member_n, "integer to test")->required();
    member->callback([&] { action = [&] { cmd_skolem_member(inv, member_n); }; });

    int enum_w = 0;
    std::string enum_from, enum_to;
    auto* en = skolem_cmd->add_subcommand("enum", "list the members of window 2^w");
    en->add_option("w", enum_w, "window exponent")->required();
    en->add_option("--from", enum_from, "first n of a subrange");
    en->add_option("--to", enum_to, "last n of a subrange");
    en->callback([&] { action = [&] { cmd_skolem_enum(inv, enum_w, enum_from, enum_to); }; });

    auto* density_cmd = app.add_subcommand("density", "moment statistics")->require_subcommand(1);
    int scan_w = 0;
    std::optional<std::uint64_t> scan_sample;
    auto* scan = density_cmd->add_subcommand("scan", "moments of r(n) on window 2^w");
    scan->add_option("w", scan_w, "window exponent")->required();
    scan->add_option("--sample", scan_sample, "sample this many integers (seeded by --seed)");
    scan->callback([&] { action = [&] { cmd_density_scan(inv, scan_w, scan_sample); }; });

    std::uint64_t mean_y = 0;
    auto* mean = density_cmd->add_subcommand("mean-g", "mean value of g over even n <= Y");
    mean->add_option("Y", mean_y, "upper limit")->required();
    mean->callback([&] { action = [&] { cmd_mean_g(inv, mean_y); }; });

    auto* bh_cmd = app.add_subcommand("bh", "prime pairs of linear forms")->require_subcommand(1);
    std::string f1, f2;
    std::uint64_t bh_x = 0, plimit = 1'000'000;
    const auto add_forms = [&](CLI::App* c) {
        c->add_option("--f1", f1, "first form a1,b1")->required();
        c->add_option("--f2", f2, "second form a2,b2")->required();
    };
    auto* count = bh_cmd->add_subcommand("count", "count x <= X with both forms prime");
    add_forms(count);
    count->add_option("--X", bh_x, "range")->required();
    count->callback([&] { action = [&] { cmd_bh_count(inv, f1, f2, bh_x); }; });
    auto* constant = bh_cmd->add_subcommand("constant", "the constant C_f");
    add_forms(constant);
    constant->add_option("--plimit", plimit, "Euler product prime limit");
    constant->callback([&] { action = [&] { cmd_bh_constant(inv, f1, f2, plimit); }; });
    auto* report = bh_cmd->add_subcommand("report", "count against predictions and bounds");
    add_forms(report);
    report->add_option("--X", bh_x, "range")->required();
    report->callback([&] { action = [&] { cmd_bh_report(inv, f1, f2, bh_x); }; });

    auto* lrs_cmd = app.add_subcommand("lrs", "linear recurrences")->require_subcommand(1);
    std::string spec, coeffs, inits, max_n;
    bool probabilistic = false;
    const auto add_lrs = [&](CLI::App* c) {
        c->add_option("--lrs", spec, "\"coeffs=a0,...; inits=u0,...\"");
        c->add_option("--coeffs", coeffs, "a0,...,a_{k-1} for u_{n+k} = a0 u_{n+k-1} + ...");
        c->add_option("--inits", inits, "u0,...,u_{k-1}");
    };
    auto* zeros = lrs_cmd->add_subcommand("zeros", "zeros n <= N lying in the set");
    add_lrs(zeros);
    zeros->add_option("--max-n", max_n, "search limit N")->required();
    zeros->add_flag("--probabilistic", probabilistic, "verify zeros modulo random primes only");
    zeros->callback([&] { action = [&] { cmd_lrs_zeros(inv, lrs_from(spec, coeffs, inits), max_n, probabilistic); }; });
    auto* degenerate = lrs_cmd->add_subcommand("degenerate", "degeneracy test and decomposition");
    add_lrs(degenerate);
    degenerate->callback([&] { action = [&] { cmd_lrs_degenerate(inv, lrs_from(spec, coeffs, inits)); }; });

    std::optional<int> bounds_w;
    auto* bounds = app.add_subcommand("bounds", "zero bound of a recurrence and window parameters");
    add_lrs(bounds);
    bounds->add_option("--window", bounds_w, "window exponent w");
    bounds->callback([&] { action = [&] { cmd_bounds(inv, spec, coeffs, inits, bounds_w); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        inv.finalize();
        action();
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    }
    return kOk;
}

}  // namespace uss::cli
