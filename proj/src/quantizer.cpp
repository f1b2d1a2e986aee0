#include "cantorquant/quantizer.hpp"

#include "cantorquant/measure.hpp"

#include <algorithm>
#include <string>

namespace cq {

Codebook::Codebook(std::vector<Point> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end());
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
        throw DomainError("codebook has duplicate points");
}

namespace {

enum class Kind { Power, Low, HighThree, HighFour };

struct Layout {
    unsigned ell;
    std::uint64_t cells;
    std::uint64_t k;  // size of the split set
    Kind kind;
};

std::uint64_t pow4(unsigned e) { return std::uint64_t{1} << (2 * e); }

Layout layout(std::uint64_t n) {
    Level l = level(n);
    std::uint64_t cells = pow4(l.ell);
    switch (l.regime) {
        case Regime::Power: return {l.ell, cells, 0, Kind::Power};
        case Regime::Low: return {l.ell, cells, n - cells, Kind::Low};
        case Regime::High:
            if (n <= 3 * cells) return {l.ell, cells, n - 2 * cells, Kind::HighThree};
            return {l.ell, cells, n - 3 * cells, Kind::HighFour};
    }
    return {};
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Choice combinations available for any one split set of the layout.
BigInt choices_per_subset(const Layout& L) {
    switch (L.kind) {
        case Kind::Power: return 1;
        case Kind::Low: return pow_int(2, L.k);
        case Kind::HighThree: return pow_int(2, L.cells - L.k) * pow_int(4, L.k);
        case Kind::HighFour: return pow_int(4, L.cells - L.k);
    }
    return 1;
}

std::size_t choice_count(const Layout& L) {
    switch (L.kind) {
        case Kind::Power: return 0;
        case Kind::Low: return L.k;
        default: return L.cells;
    }
}

unsigned arity(const Layout& L, const std::vector<std::uint64_t>& split, std::size_t pos) {
    if (L.kind == Kind::Low) return 2;
    bool in_split = std::binary_search(split.begin(), split.end(), static_cast<std::uint64_t>(pos));
    if (L.kind == Kind::HighThree) return in_split ? 4 : 2;
    if (L.kind == Kind::HighFour) return in_split ? 1 : 4;
    return 1;
}

void check_constructible(std::uint64_t n) {
    if (n > kMaxConstructibleN)
        throw DomainError("n = " + std::to_string(n) + " is too large to construct (limit " +
                          std::to_string(kMaxConstructibleN) + ")");
}

}  // namespace

Level level(std::uint64_t n) {
    if (n < 2) throw DomainError("level needs n >= 2");
    unsigned ell = 0;
    while (ell < 31 && pow4(ell + 1) <= n) ++ell;
    std::uint64_t p = pow4(ell);
    if (n == p) return {ell, Regime::Power};
    if (n <= 2 * p) return {ell, Regime::Low};
    return {ell, Regime::High};
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Power: return "POWER";
        case Regime::Low: return "LOW";
        case Regime::High: return "HIGH";
    }
    return "?";
}

Rational quantization_error(std::uint64_t n) {
    if (n < 1) throw DomainError("quantization error needs n >= 1");
    if (n == 1) return Rational(1, 4);
    Level l = level(n);
    BigInt p4 = pow_int(4, l.ell);
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    BigInt nn(static_cast<unsigned long>(n));
    Rational v;
    switch (l.regime) {
        case Regime::Power:
            v = Rational(BigInt(1), 4 * pow_int(9, l.ell));
            break;
        case Regime::Low:
            v = Rational(2 * p4 - nn) + Rational(5, 9) * Rational(nn - p4);
            v /= Rational(4 * pow_int(36, l.ell));
            break;
        case Regime::High:
            v = Rational(BigInt(9 * p4 - 2 * nn), pow_int(36, l.ell + 1));
            break;
    }
    v.canonicalize();
    return v;
}

BigInt count_variants(std::uint64_t n) {
    Layout L = layout(n);
    return binomial(L.cells, L.k) * choices_per_subset(L);
}

std::pair<BinaryWord, BinaryWord> level_cell(unsigned ell, std::uint64_t index) {
    if (index >= pow4(ell)) throw DomainError("cell index out of range");
    std::uint64_t sbits = index >> ell, tbits = index & ((std::uint64_t{1} << ell) - 1);
    BinaryWord s, t;
    for (int b = static_cast<int>(ell) - 1; b >= 0; --b) {
        s.symbols.push_back(((sbits >> b) & 1) ? 2 : 1);
        t.symbols.push_back(((tbits >> b) & 1) ? 2 : 1);
    }
    return {s, t};
}

std::vector<std::pair<BinaryWord, BinaryWord>> VariantSpec::split_addresses() const {
    std::vector<std::pair<BinaryWord, BinaryWord>> out;
    for (auto c : split_cells) out.push_back(level_cell(lvl.ell, c));
    return out;
}

unsigned choice_arity(const VariantSpec& spec, std::size_t pos) {
    return arity(layout(spec.n), spec.split_cells, pos);
}

void validate(const VariantSpec& spec) {
    if (spec.n < 2) throw DomainError("variant spec needs n >= 2");
    check_constructible(spec.n);
    Layout L = layout(spec.n);
    if (!(spec.lvl == level(spec.n))) throw DomainError("variant spec level does not match n");
    if (spec.split_cells.size() != L.k) throw DomainError("variant spec split set has the wrong size");
    for (std::size_t i = 0; i < spec.split_cells.size(); ++i) {
        if (spec.split_cells[i] >= L.cells) throw DomainError("variant spec split cell out of range");
        if (i && spec.split_cells[i] <= spec.split_cells[i - 1])
            throw DomainError("variant spec split cells must be strictly ascending");
    }
    if (spec.choices.size() != choice_count(L)) throw DomainError("variant spec has the wrong number of choices");
    for (std::size_t p = 0; p < spec.choices.size(); ++p)
        if (spec.choices[p] >= arity(L, spec.split_cells, p)) throw DomainError("variant spec choice out of range");
}

VariantSpec variant_at(std::uint64_t n, const BigInt& index) {
    check_constructible(n);
    Layout L = layout(n);
    BigInt total = count_variants(n);
    if (index < 0 || index >= total)
        throw DomainError("variant index out of range; n = " + std::to_string(n) + " has " + total.get_str() +
                          " variants");
    BigInt per = choices_per_subset(L);
    BigInt rank = index / per;
    BigInt rest = index % per;

    VariantSpec spec;
    spec.n = n;
    spec.lvl = level(n);
    // Lexicographic unranking of a k-subset of {0..cells-1}.
    std::uint64_t next = 0;
    for (std::uint64_t pos = 0; pos < L.k; ++pos) {
        while (true) {
            BigInt with = binomial(L.cells - next - 1, L.k - pos - 1);
            if (rank < with) break;
            rank -= with;
            ++next;
        }
        spec.split_cells.push_back(next++);
    }
    spec.choices.assign(choice_count(L), 0);
    for (std::size_t p = spec.choices.size(); p-- > 0;) {
        unsigned a = arity(L, spec.split_cells, p);
        BigInt digit = rest % a;
        spec.choices[p] = static_cast<std::uint8_t>(digit.get_ui());
        rest /= a;
    }
    return spec;
}

VariantSpec default_variant(std::uint64_t n) { return variant_at(n, 0); }

namespace {

struct CellPoints {
    BinaryWord s, t;
    void add(std::vector<Point>& out, const BinaryWord& a, const BinaryWord& b) const {
        out.push_back({cantor_point(a), cantor_point(b)});
    }
    void single(std::vector<Point>& out) const { add(out, s, t); }
    void two(std::vector<Point>& out, unsigned choice) const {
        if (choice == 0) {
            add(out, s.append(1), t);
            add(out, s.append(2), t);
        } else {
            add(out, s, t.append(1));
            add(out, s, t.append(2));
        }
    }
    void three(std::vector<Point>& out, unsigned choice) const {
        BinaryWord s1 = s.append(1), s2 = s.append(2), t1 = t.append(1), t2 = t.append(2);
        switch (choice) {
            case 0: add(out, s1, t); add(out, s2, t1); add(out, s2, t2); break;
            case 1: add(out, s1, t1); add(out, s1, t2); add(out, s2, t); break;
            case 2: add(out, s1, t1); add(out, s2, t1); add(out, s, t2); break;
            default: add(out, s, t1); add(out, s1, t2); add(out, s2, t2); break;
        }
    }
    void four(std::vector<Point>& out) const {
        for (std::uint8_t a : {1, 2})
            for (std::uint8_t b : {1, 2}) add(out, s.append(a), t.append(b));
    }
};

}  // namespace

Codebook optimal_codebook(const VariantSpec& spec) {
    validate(spec);
    Layout L = layout(spec.n);
    std::vector<Point> pts;
    pts.reserve(spec.n);
    std::size_t next_split = 0;
    for (std::uint64_t c = 0; c < L.cells; ++c) {
        auto [s, t] = level_cell(L.ell, c);
        CellPoints cell{s, t};
        bool in_split = next_split < spec.split_cells.size() && spec.split_cells[next_split] == c;
        switch (L.kind) {
            case Kind::Power: cell.single(pts); break;
            case Kind::Low:
                if (in_split) cell.two(pts, spec.choices[next_split]);
                else cell.single(pts);
                break;
            case Kind::HighThree:
                if (in_split) cell.three(pts, spec.choices[c]);
                else cell.two(pts, spec.choices[c]);
                break;
            case Kind::HighFour:
                if (in_split) cell.four(pts);
                else cell.three(pts, spec.choices[c]);
                break;
        }
        if (in_split) ++next_split;
    }
    return Codebook(std::move(pts));
}

Codebook optimal_codebook(std::uint64_t n) {
    if (n < 1) throw DomainError("codebook size must be >= 1");
    if (n == 1) return Codebook({{Rational(1, 2), Rational(1, 2)}});
    return optimal_codebook(default_variant(n));
}

std::vector<BigInt> sample_variant_indices(const BigInt& count, std::uint64_t cap) {
    std::vector<BigInt> idx;
    if (count <= cap) {
        for (BigInt k = 0; k < count; ++k) idx.push_back(k);
        return idx;
    }
    if (cap <= 1) return {BigInt(0)};
    for (std::uint64_t k = 0; k < cap; ++k)
        idx.push_back(BigInt(static_cast<unsigned long>(k)) * (count - 1) / (cap - 1));
    return idx;
}

VariantStream::VariantStream(std::uint64_t n) : n_(n) {
    check_constructible(n);
    cells_ = layout(n).cells;
}

std::optional<VariantSpec> VariantStream::next() {
    if (!started_) {
        started_ = true;
        current_ = default_variant(n_);
        return current_;
    }
    if (!current_ || !advance()) {
        current_.reset();
        return std::nullopt;
    }
    return current_;
}

bool VariantStream::advance() {
    Layout L = layout(n_);
    VariantSpec& v = *current_;
    for (std::size_t p = v.choices.size(); p-- > 0;) {
        if (v.choices[p] + 1u < arity(L, v.split_cells, p)) {
            ++v.choices[p];
            std::fill(v.choices.begin() + static_cast<std::ptrdiff_t>(p) + 1, v.choices.end(), 0);
            return true;
        }
    }
    // Choices exhausted: move to the next subset.
    auto& a = v.split_cells;
    std::size_t k = a.size();
    for (std::size_t p = k; p-- > 0;) {
        if (a[p] < cells_ - k + p) {
            ++a[p];
            for (std::size_t q = p + 1; q < k; ++q) a[q] = a[q - 1] + 1;
            std::fill(v.choices.begin(), v.choices.end(), 0);
            return true;
        }
    }
    return false;
}

}  // namespace cq
