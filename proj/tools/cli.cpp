#include "cli.hpp"

#include "cantorquant/distortion.hpp"
#include "cantorquant/io.hpp"
#include "cantorquant/quantizer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace cq::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string command;
    std::int64_t n = 0;
    std::optional<std::string> variant_index;
    bool all = false;
    std::string tolerance = "1e-12";
    unsigned depth = kDefaultMaxDepth;
    unsigned seeds = 200;
    std::uint64_t rng_seed = 1;
    std::string format = "json";
    std::optional<std::string> output_path;
    std::string codebook_path;
    std::uint64_t max_variants = 1000;
    std::string verify_tolerance = "1e-9";
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string approx(const Rational& q) { return to_decimal(q, 10); }

std::uint64_t require_n(const RunConfig& c, std::int64_t min) {
    if (c.n < min) throw UsageError(c.command + ": n must be >= " + std::to_string(min));
    return static_cast<std::uint64_t>(c.n);
}

Rational parse_tolerance(const std::string& text, const char* flag) {
    Rational t;
    try {
        t = parse_rational(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
    if (t <= 0) throw UsageError(std::string(flag) + " must be positive");
    return t;
}

// Writes to the output path when given, else to `out`.
void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (!c.output_path) {
        out << text;
        return;
    }
    std::ofstream f(*c.output_path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + *c.output_path + "' for writing");
    f << text;
    if (!f) throw IoError("write to '" + *c.output_path + "' failed");
}

json codebook_record(std::uint64_t n, const BigInt& index, const Codebook& cb, const Rational& v) {
    json j = codebook_to_json(cb);
    j["variant"] = index.get_str();
    j["error"] = to_string(v);
    j["error_approx"] = approx(v);
    return j;
}

int cmd_optimal(const RunConfig& c, std::ostream& out) {
    std::uint64_t n = require_n(c, 1);
    if (c.all && c.variant_index) throw UsageError("optimal: --variant and --all are exclusive");
    if (c.format != "json" && c.format != "csv") throw UsageError("optimal: --format must be json or csv");
    if (n > kMaxConstructibleN) throw UsageError("optimal: n is too large to construct");
    BigInt count = n == 1 ? BigInt(1) : count_variants(n);
    Rational v = quantization_error(n);

    std::vector<std::pair<BigInt, Codebook>> books;
    if (c.all) {
        if (count > 100000) throw UsageError("optimal: --all refuses to print " + count.get_str() + " codebooks");
        if (n == 1) {
            books.emplace_back(BigInt(0), optimal_codebook(1));
        } else {
            VariantStream stream(n);
            BigInt k = 0;
            while (auto spec = stream.next()) {
                books.emplace_back(k, optimal_codebook(*spec));
                ++k;
            }
        }
    } else {
        BigInt index = 0;
        if (c.variant_index) {
            try {
                index = BigInt(*c.variant_index, 10);
            } catch (const std::invalid_argument&) {
                throw UsageError("optimal: --variant must be a nonnegative integer");
            }
        }
        if (index < 0 || index >= count)
            throw UsageError("optimal: variant index out of range; n = " + std::to_string(n) + " has " +
                             count.get_str() + " variant(s)");
        books.emplace_back(index, n == 1 ? optimal_codebook(1) : optimal_codebook(variant_at(n, index)));
    }

    std::string text;
    if (c.format == "json") {
        for (const auto& [k, cb] : books) text += codebook_record(n, k, cb, v).dump() + "\n";
    } else {
        text = "variant,x,y\n";
        for (const auto& [k, cb] : books)
            for (const auto& p : cb.points()) text += k.get_str() + "," + to_string(p.x) + "," + to_string(p.y) + "\n";
    }
    emit(c, text, out);
    return kOk;
}

int cmd_error(const RunConfig& c, std::ostream& out) {
    std::uint64_t n = require_n(c, 1);
    Rational v = quantization_error(n);
    if (c.format == "json") {
        json j{{"n", n}, {"error", to_string(v)}, {"error_approx", approx(v)}};
        emit(c, j.dump() + "\n", out);
    } else {
        emit(c, "V_" + std::to_string(n) + " = " + to_string(v) + " (approx " + approx(v) + ")\n", out);
    }
    return kOk;
}

std::string read_input(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read '" + path + "'");
    buf << f.rdbuf();
    return buf.str();
}

int cmd_distortion(const RunConfig& c, std::istream& in, std::ostream& out) {
    Rational tol = parse_tolerance(c.tolerance, "--tol");
    if (c.depth < 1 || c.depth > kMaxDepthLimit)
        throw UsageError("distortion: --depth must be in 1.." + std::to_string(kMaxDepthLimit));
    std::vector<Codebook> books;
    try {
        books = parse_codebooks(read_input(c.codebook_path, in));
    } catch (const ParseError& e) {
        throw IoError(std::string("parse error: ") + e.what());
    }
    std::string text;
    for (const auto& cb : books) {
        CertifiedInterval iv = exact_distortion(cb, tol, c.depth);
        json j = interval_to_json(iv);
        j["n"] = cb.size();
        j["lower_approx"] = approx(iv.lower);
        j["upper_approx"] = approx(iv.upper);
        j["depth"] = iv.depth_reached;
        text += j.dump() + "\n";
    }
    emit(c, text, out);
    return kOk;
}

int cmd_count(const RunConfig& c, std::ostream& out) {
    std::uint64_t n = require_n(c, 2);
    emit(c, count_variants(n).get_str() + "\n", out);
    return kOk;
}

int cmd_plot(const RunConfig& c, std::ostream& out) {
    std::uint64_t n = require_n(c, 1);
    if (c.depth < 1 || c.depth > 8) throw UsageError("plot: --depth must be in 1..8");
    if (n > 4096) throw UsageError("plot: n must be <= 4096");
    emit(c, render_svg(optimal_codebook(n), c.depth), out);
    return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    std::uint64_t n = require_n(c, 1);
    Rational tol = parse_tolerance(c.verify_tolerance, "--tol");
    if (c.depth < 1 || c.depth + MultistartOptions{}.depth_slack > kMaxDepthLimit)
        throw UsageError("verify: --depth out of range");
    if (c.seeds < 1) throw UsageError("verify: --seeds must be >= 1");
    if (c.max_variants < 1) throw UsageError("verify: --max-variants must be >= 1");
    if (n > 4096) throw UsageError("verify: n must be <= 4096");

    std::ostringstream rep;
    Rational v = quantization_error(n);
    rep << "n = " << n << "\n";
    rep << "closed-form V_n = " << to_string(v) << " (approx " << approx(v) << ")\n";

    bool ok = true;
    BigInt count = n == 1 ? BigInt(1) : count_variants(n);
    auto indices = sample_variant_indices(count, c.max_variants);
    rep << "variants: " << count.get_str() << " total, " << indices.size() << " checked\n";
    std::size_t failed = 0;
    for (const auto& k : indices) {
        Codebook cb = n == 1 ? optimal_codebook(1) : optimal_codebook(variant_at(n, k));
        bool fixed = false, value = false;
        try {
            fixed = lloyd_step(cb, c.depth) == cb;
        } catch (const std::exception&) {
            fixed = false;
        }
        CertifiedInterval iv = exact_distortion(cb, default_tolerance(), c.depth);
        value = iv.exact && iv.lower == v;
        if (!fixed || !value) {
            ok = false;
            ++failed;
        }
        rep << "variant " << k.get_str() << ": fixed point " << (fixed ? "pass" : "FAIL") << ", distortion "
            << (value ? "= V_n" : "!= V_n (" + to_string(iv.lower) + ".." + to_string(iv.upper) + ")") << "\n";
    }

    MultistartResult ms = multistart_search(n, c.seeds, c.rng_seed, c.depth);
    rep << "multistart: " << c.seeds << " seeds, rng seed " << c.rng_seed << ", depth " << c.depth << ", "
        << ms.completed << " completed, " << ms.aborted << " aborted\n";
    if (ms.best) {
        rep << "multistart best upper = " << to_string(ms.best_distortion.upper) << " (approx "
            << approx(ms.best_distortion.upper) << ")\n";
        if (ms.best_distortion.upper < v - tol) {
            ok = false;
            rep << "multistart beats V_n by more than " << to_string(tol) << "\n";
        }
    } else {
        rep << "multistart best upper = none (every run aborted)\n";
    }
    rep << "result: " << (ok ? "PASS" : "FAIL") << (failed ? " (" + std::to_string(failed) + " variant failures)" : "")
        << "\n";
    emit(c, rep.str(), out);
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Optimal quantizers of the product Cantor measure, with exact verification.", "cantorquant"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cantorquant 0.1.0");

    auto* optimal = app.add_subcommand("optimal", "print optimal codebook(s) and V_n");
    optimal->add_option("n", c.n, "number of codewords")->required();
    optimal->add_option("--variant", c.variant_index, "0-based variant index in lexicographic order");
    optimal->add_flag("--all", c.all, "print every variant (JSON lines)");
    optimal->add_option("--format", c.format, "json or csv")->capture_default_str();
    optimal->add_option("--out", c.output_path, "output file");

    auto* error = app.add_subcommand("error", "print the closed-form quantization error V_n");
    error->add_option("n", c.n, "number of codewords")->required();
    std::string error_format = "text";
    error->add_option("--format", error_format, "json or text")->capture_default_str();

    auto* distortion = app.add_subcommand("distortion", "certified distortion of codebook(s) from a JSON file");
    distortion->add_option("--codebook", c.codebook_path, "JSON file, or - for stdin")->required();
    distortion->add_option("--tol", c.tolerance, "stop when upper - lower <= tol")->capture_default_str();
    unsigned distortion_depth = kDefaultMaxDepth;
    distortion->add_option("--depth", distortion_depth, "maximum cell depth")->capture_default_str();
    distortion->add_option("--out", c.output_path, "output file");

    auto* verify = app.add_subcommand("verify", "check every variant is a Lloyd fixed point and run multistart");
    verify->add_option("n", c.n, "number of codewords")->required();
    verify->add_option("--seeds", c.seeds, "multistart runs")->capture_default_str();
    verify->add_option("--rng-seed", c.rng_seed, "LCG seed")->capture_default_str();
    unsigned verify_depth = 20;
    verify->add_option("--depth", verify_depth, "resolution depth")->capture_default_str();
    verify->add_option("--max-variants", c.max_variants, "check at most this many variants (evenly spaced)")
        ->capture_default_str();
    verify->add_option("--tol", c.verify_tolerance, "allowed multistart undershoot of V_n")->capture_default_str();
    verify->add_option("--out", c.output_path, "output file");

    auto* count = app.add_subcommand("count", "number of optimal variants in the construction");
    count->add_option("n", c.n, "number of codewords")->required();

    auto* plot = app.add_subcommand("plot", "SVG of the support cells and the default optimal codebook");
    plot->add_option("n", c.n, "number of codewords")->required();
    unsigned plot_depth = 3;
    plot->add_option("--depth", plot_depth, "cell depth")->capture_default_str();
    plot->add_option("--out", c.output_path, "output SVG file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        c.command = app.get_subcommands().front()->get_name();
        if (optimal->parsed()) return cmd_optimal(c, out);
        if (error->parsed()) {
            c.format = error_format;
            return cmd_error(c, out);
        }
        if (distortion->parsed()) {
            c.depth = distortion_depth;
            return cmd_distortion(c, in, out);
        }
        if (verify->parsed()) {
            c.depth = verify_depth;
            return cmd_verify(c, out);
        }
        if (count->parsed()) return cmd_count(c, out);
        if (plot->parsed()) {
            c.depth = plot_depth;
            return cmd_plot(c, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace cq::cli
