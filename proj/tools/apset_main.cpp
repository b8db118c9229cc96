// Command line front end for the set/arc toolkit. Subcommands cover set
// generation, arc-restricted energy, the extremality series, spectrum scans
// and additive representation reports; all tabular output is CSV or JSON with
// full-precision reals, so reruns are byte-identical and diffable.

#include <CLI11.hpp>
#include <json.hpp>

#include <apset/apset.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace apset;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": bad integer '" + s + "'");
    }
}

double parse_real(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": bad number '" + s + "'");
    }
}

IntegerSet load_set(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open set file '" + path + "'");
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    in.clear();
    in.seekg(0);
    if (in.gcount() == 4 && std::string(magic, 4) == "APSB") return read_set_binary(in);
    return read_set_text(in);
}

MultiplicativeSpec parse_rule(const std::string& s) {
    auto parts = split(s, ':');
    if (parts[0] == "kfree" && parts.size() == 2)
        return k_free_spec(static_cast<unsigned>(parse_u64(parts[1], "--rule kfree")));
    if (parts[0] == "one" && parts.size() == 1) return all_ones_spec();
    if (parts[0] == "drop_prime" && parts.size() == 2)
        return drop_prime_spec(parse_u64(parts[1], "--rule drop_prime"));
    if (parts[0] == "drop_primes_below" && parts.size() == 2)
        return drop_primes_below_spec(parse_u64(parts[1], "--rule drop_primes_below"));
    throw std::invalid_argument("unknown rule '" + s + "'");
}

/// Output sink: a file when --output is given, stdout otherwise.
struct Sink {
    std::ofstream file;
    std::ostream* out = &std::cout;

    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
        out = &file;
    }
};

/// Accumulates rows and renders them as CSV (header + rows) or as a JSON
/// array of objects keyed by the header names.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void row(std::vector<json> cells) { rows_.push_back(std::move(cells)); }

    void render(std::ostream& out, const std::string& format) const {
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows_) {
                json obj;
                for (std::size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = r[i];
                arr.push_back(std::move(obj));
            }
            out << arr.dump(2) << '\n';
            return;
        }
        CsvWriter csv(out);
        csv.row(header_);
        for (const auto& r : rows_) {
            std::vector<std::string> cells;
            cells.reserve(r.size());
            for (const json& c : r) {
                if (c.is_string())
                    cells.push_back(c.get<std::string>());
                else if (c.is_number_float())
                    cells.push_back(fmt_real(c.get<double>()));
                else
                    cells.push_back(c.dump());
            }
            csv.row(cells);
        }
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<json>> rows_;
};

struct GenerateOpts {
    std::string family;
    std::uint64_t x = 0;
    std::uint64_t k = 2;
    std::uint64_t r = 2;
    std::uint64_t q = 0;
    std::string residues;
    std::string rule;
    std::string output;
    bool text = false;
};

void run_generate(const GenerateOpts& o) {
    json params;
    std::unique_ptr<IntegerSet> set;
    if (o.family == "kfree") {
        set = std::make_unique<IntegerSet>(gen_kfree(static_cast<unsigned>(o.k), o.x));
        params["k"] = o.k;
    } else if (o.family == "beatty") {
        set = std::make_unique<IntegerSet>(gen_beatty(o.r, o.x));
        params["r"] = o.r;
    } else if (o.family == "periodic") {
        if (o.q == 0) throw std::invalid_argument("periodic family requires --q");
        std::vector<std::uint64_t> res;
        if (!o.residues.empty())
            for (const auto& tok : split(o.residues, ','))
                res.push_back(parse_u64(tok, "--residues"));
        set = std::make_unique<IntegerSet>(gen_periodic(o.q, res, o.x));
        params["q"] = o.q;
        params["residues"] = res;
    } else if (o.family == "multiplicative") {
        if (o.rule.empty()) throw std::invalid_argument("multiplicative family requires --rule");
        MultiplicativeSpec spec = parse_rule(o.rule);
        set = std::make_unique<IntegerSet>(gen_multiplicative(spec, o.x));
        params["rule"] = spec.name;
    } else {
        throw std::invalid_argument("unknown family '" + o.family + "'");
    }

    {
        std::ofstream out(o.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file '" + o.output + "'");
        if (o.text)
            write_set_text(out, *set);
        else
            write_set_binary(out, *set);
    }

    json side;
    side["family"] = o.family;
    side["params"] = params;
    side["x"] = set->limit();
    side["count"] = set->count();
    side["density"] = density(*set);
    std::ofstream meta(o.output + ".json", std::ios::binary);
    if (!meta) throw std::runtime_error("cannot open sidecar file '" + o.output + ".json'");
    meta << side.dump(2) << '\n';
}

struct EnergyOpts {
    std::string set_path;
    std::string arcs = "farey";
    std::string q_list;
    std::string dump_arcs;
    std::string output;
    std::string format = "csv";
    unsigned threads = 1;
};

ArcSystem build_arcs(const std::string& kind, std::uint64_t x, double Q) {
    if (kind == "farey") return farey_major_arcs(x, Q);
    auto parts = split(kind, ':');
    if (parts.size() == 2 && parts[0] == "sequence") {
        std::uint64_t r = 0;
        if (parts[1] == "beatty2") r = 2;
        else if (parts[1] == "beatty3") r = 3;
        else throw std::invalid_argument("unknown frequency sequence '" + parts[1] + "'");
        return sequence_major_arcs(beatty_spectrum(r, Q), x, Q);
    }
    throw std::invalid_argument("unknown arc system '" + kind + "'");
}

void run_energy(const EnergyOpts& o) {
    IntegerSet set = load_set(o.set_path);
    Autocorrelation corr = autocorrelation(set);
    Table table({"set", "x", "arcs", "Q", "major_measure", "major_energy", "minor_ratio"});
    for (const auto& tok : split(o.q_list, ',')) {
        double Q = parse_real(tok, "--Q");
        ArcSystem major = build_arcs(o.arcs, set.limit(), Q);
        double energy = energy_on_arcs(corr, major, o.threads);
        double ratio = minor_arc_ratio(corr, major, o.threads);
        table.row({o.set_path, set.limit(), o.arcs, Q, major.measure(), energy, ratio});
        if (!o.dump_arcs.empty()) {
            char suffix[48];
            std::snprintf(suffix, sizeof suffix, "-q%g.txt", Q);
            std::string path = o.dump_arcs + suffix;
            std::ofstream arcs_out(path, std::ios::binary);
            if (!arcs_out) throw std::runtime_error("cannot open arc dump file '" + path + "'");
            write_arcs_text(arcs_out, major);
        }
    }
    Sink sink(o.output);
    table.render(*sink.out, o.format);
}

struct ExtremalityOpts {
    std::string set_path;
    std::uint64_t kfree_theory = 0;
    std::uint64_t Q = 0;
    std::string output;
    std::string format = "csv";
};

void run_extremality(const ExtremalityOpts& o) {
    if (o.set_path.empty() == (o.kfree_theory == 0))
        throw std::invalid_argument("pass exactly one of --set and --kfree-theory");
    std::string source;
    ArcCoefficientTable coef;
    if (!o.set_path.empty()) {
        IntegerSet set = load_set(o.set_path);
        coef = arc_coefficient_table(set, o.Q);
        source = o.set_path;
    } else {
        coef = kfree_arc_coefficient_table(static_cast<unsigned>(o.kfree_theory), o.Q);
        source = "kfree-theory:" + std::to_string(o.kfree_theory);
    }
    ExtremalityProfile prof = extremality_profile(coef);
    Table table({"source", "x", "q", "increment", "partial", "inv_rho", "gap"});
    for (std::size_t i = 0; i < prof.partial.size(); ++i)
        table.row({source, coef.x, i + 1, prof.increment[i], prof.partial[i], prof.inv_rho,
                   prof.inv_rho - prof.partial[i]});
    Sink sink(o.output);
    table.render(*sink.out, o.format);
}

struct SpectrumOpts {
    std::string set_path;
    std::string candidates;
    double threshold = 0.01;
    std::string output;
    std::string format = "csv";
};

std::vector<Frequency> parse_candidates(const std::string& spec) {
    std::vector<Frequency> out;
    for (const auto& tok : split(spec, ',')) {
        auto parts = split(tok, ':');
        if (parts[0] == "rational" && parts.size() == 2) {
            for (const Frequency& f : farey_frequencies(
                     static_cast<double>(parse_u64(parts[1], "--candidates rational"))))
                out.push_back(f);
        } else if (parts[0] == "beatty" && parts.size() == 3) {
            std::uint64_t r = parse_u64(parts[1], "--candidates beatty");
            double Q = static_cast<double>(parse_u64(parts[2], "--candidates beatty"));
            for (double v : beatty_spectrum(r, Q)) out.push_back(Frequency::irrational(v));
        } else if (parts.size() == 1) {
            out.push_back(Frequency::irrational(parse_real(parts[0], "--candidates")));
        } else {
            throw std::invalid_argument("unknown candidate spec '" + tok + "'");
        }
    }
    return out;
}

void run_spectrum(const SpectrumOpts& o) {
    IntegerSet set = load_set(o.set_path);
    auto est = spectrum_scan(set, parse_candidates(o.candidates), o.threshold);
    Table table({"beta", "num", "den", "re", "im", "modulus"});
    for (const auto& e : est.entries)
        table.row({e.beta.value(), e.beta.is_rational() ? e.beta.num() : 0,
                   e.beta.is_rational() ? e.beta.den() : 0, e.coefficient.real(),
                   e.coefficient.imag(), e.modulus});
    Sink sink(o.output);
    table.render(*sink.out, o.format);
}

struct RepresentOpts {
    std::string set_a;
    std::string set_b;
    std::string window;
    std::string main = "beatty";
    std::string output;
    std::string format = "csv";
};

void run_represent(const RepresentOpts& o) {
    IntegerSet a = load_set(o.set_a);
    IntegerSet b = load_set(o.set_b);
    auto bounds = split(o.window, ':');
    if (bounds.size() != 2)
        throw std::invalid_argument("--window must be LO:HI, got '" + o.window + "'");
    std::uint64_t lo = parse_u64(bounds[0], "--window");
    std::uint64_t hi = parse_u64(bounds[1], "--window");

    std::function<double(std::uint64_t)> main_fn;
    auto parts = split(o.main, ':');
    if (o.main == "beatty") {
        main_fn = [](std::uint64_t n) { return beatty_main_term(n); };
    } else if (parts.size() == 2 && parts[0] == "rational") {
        std::uint64_t Q = parse_u64(parts[1], "--main rational");
        auto ta = std::make_shared<ArcCoefficientTable>(arc_coefficient_table(a, Q));
        auto tb = std::make_shared<ArcCoefficientTable>(arc_coefficient_table(b, Q));
        main_fn = [ta, tb](std::uint64_t n) { return rational_main_term(*ta, *tb, n).value; };
    } else {
        throw std::invalid_argument("unknown main term '" + o.main + "'");
    }

    AsymptoticReport rep = asymptotic_report(a, b, main_fn, lo, hi);
    Table table({"n", "r", "main", "ratio"});
    for (const auto& row : rep.rows) table.row({row.n, row.r, row.main, row.ratio});
    Sink sink(o.output);
    table.render(*sink.out, o.format);
    std::fprintf(stderr, "ratio over [%llu, %llu]: mean=%.17g min=%.17g max=%.17g\n",
                 static_cast<unsigned long long>(lo), static_cast<unsigned long long>(hi),
                 rep.mean, rep.min, rep.max);
}

int run_selftest(std::uint64_t seed) {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::printf("%s %s\n", ok ? "ok" : "FAILED", name);
        if (!ok) ++failures;
    };

    check("squarefree count to 30", gen_kfree(2, 30).count() == 19);
    check("beatty sqrt2 prefix",
          gen_beatty(2, 10).elements() ==
              std::vector<std::uint64_t>{1, 2, 4, 5, 7, 8, 9});
    check("periodic residues",
          gen_periodic(3, {1, 2}, 9).elements() ==
              std::vector<std::uint64_t>{1, 2, 4, 5, 7, 8});
    check("squarefree nonresidue intersection",
          intersect(gen_kfree(2, 30), gen_periodic(3, {1, 2}, 30)).count() == 14);
    check("farey arc measure",
          std::abs(farey_major_arcs(100, 2).measure() - 0.08) < 1e-15);

    // Seeded random membership words, bit 0 and the overflow bits cleared.
    std::uint64_t x = 1 << 12;
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> words(IntegerSet::word_count(x));
    for (auto& w : words) w = rng();
    words[0] &= ~std::uint64_t(1);
    std::uint64_t top = (x + 1) & 63;
    if (top != 0) words.back() &= (std::uint64_t(1) << top) - 1;
    IntegerSet random(x, std::move(words));

    Autocorrelation corr = autocorrelation_fft(random);
    check("transform equals bit-shift autocorrelation",
          corr.c == autocorrelation_direct(random).c);
    ArcSystem circle({{0.0, 1.0}});
    check("full-circle energy equals count",
          energy_on_arcs(corr, circle) == static_cast<double>(random.count()));

    auto pair = rep_count(IntegerSet::from_elements(1, {1}), IntegerSet::from_elements(1, {1}));
    check("representation of 2 from 1+1",
          pair.r == std::vector<std::uint64_t>{0, 0, 1});

    auto odd = wirsing_series(drop_prime_spec(2), 1000);
    check("odd-number prime series", odd.s1 == -0.5 && odd.s2 == 0.5);
    auto sf = wirsing_series(k_free_spec(2), 1000);
    check("squarefree prime series vanishes", sf.s1 == 0.0 && sf.s2 == 0.0);

    std::printf(failures == 0 ? "selftest passed\n" : "selftest FAILED (%d)\n", failures);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for structured integer sets, their exponential sums and arc energies"};
    app.require_subcommand(1);

    GenerateOpts gen;
    auto* cgen = app.add_subcommand("generate", "Generate a set and write it with a JSON sidecar");
    cgen->add_option("--family", gen.family, "kfree | beatty | periodic | multiplicative")
        ->required();
    cgen->add_option("--x", gen.x, "truncation (largest candidate element)")->required();
    cgen->add_option("--k", gen.k, "power for kfree (default 2)");
    cgen->add_option("--r", gen.r, "nonsquare modulus for beatty (default 2)");
    cgen->add_option("--q", gen.q, "period for periodic");
    cgen->add_option("--residues", gen.residues, "comma-separated residues for periodic");
    cgen->add_option("--rule", gen.rule,
                     "multiplicative rule: kfree:K | one | drop_prime:P | drop_primes_below:B");
    cgen->add_option("--output", gen.output, "set file to write")->required();
    cgen->add_flag("--text", gen.text, "write the text format instead of binary");
    cgen->callback([&] { run_generate(gen); });

    EnergyOpts en;
    auto* cen = app.add_subcommand("energy", "Arc-restricted energy and minor-arc ratios");
    cen->add_option("--set", en.set_path, "set file")->required();
    cen->add_option("--arcs", en.arcs, "farey | sequence:beatty2 | sequence:beatty3");
    cen->add_option("--Q", en.q_list, "comma-separated arc cutoffs")->required();
    cen->add_option("--dump-arcs", en.dump_arcs, "write each arc system to PREFIX-q<Q>.txt");
    cen->add_option("--output", en.output, "output file (default stdout)");
    cen->add_option("--format", en.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cen->add_option("--threads", en.threads, "worker threads for the energy sum");
    cen->callback([&] { run_energy(en); });

    ExtremalityOpts ex;
    auto* cex = app.add_subcommand("extremality", "Partial sums of the extremality series");
    cex->add_option("--set", ex.set_path, "set file (empirical coefficients)");
    cex->add_option("--kfree-theory", ex.kfree_theory, "use exact k-free coefficients for this k");
    cex->add_option("--Q", ex.Q, "denominator cutoff")->required();
    cex->add_option("--output", ex.output, "output file (default stdout)");
    cex->add_option("--format", ex.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cex->callback([&] { run_extremality(ex); });

    SpectrumOpts sp;
    auto* csp = app.add_subcommand("spectrum", "Scan Fourier coefficients over candidates");
    csp->add_option("--set", sp.set_path, "set file")->required();
    csp->add_option("--candidates", sp.candidates,
                    "comma-separated: rational:Q | beatty:R:Q | <decimal>")
        ->required();
    csp->add_option("--threshold", sp.threshold, "keep moduli at or above this (default 0.01)");
    csp->add_option("--output", sp.output, "output file (default stdout)");
    csp->add_option("--format", sp.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    csp->callback([&] { run_spectrum(sp); });

    RepresentOpts rp;
    auto* crp = app.add_subcommand("represent", "Representation counts against a main term");
    crp->add_option("--setA", rp.set_a, "first set file")->required();
    crp->add_option("--setB", rp.set_b, "second set file")->required();
    crp->add_option("--window", rp.window, "inclusive target range LO:HI")->required();
    crp->add_option("--main", rp.main, "beatty | rational:Q");
    crp->add_option("--output", rp.output, "output file (default stdout)");
    crp->add_option("--format", rp.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    crp->callback([&] { run_represent(rp); });

    std::uint64_t seed = 1;
    auto* cst = app.add_subcommand("selftest", "Run the built-in example checks");
    cst->add_option("--seed", seed, "seed for the randomized checks");
    int selftest_rc = 0;
    cst->callback([&] { selftest_rc = run_selftest(seed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return selftest_rc;
}
