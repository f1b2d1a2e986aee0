#include "cantorquant/words.hpp"

#include "cantorquant/rational.hpp"

#include <charconv>

namespace cq {

namespace {

constexpr std::string_view kEmpty = "∅";
constexpr std::string_view kInf = "∞";

std::uint32_t parse_symbol(std::string_view s) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
        throw ParseError("bad word symbol '" + std::string(s) + "'");
    return v;
}

void check_positive(const std::vector<std::uint32_t>& s) {
    for (auto v : s)
        if (v == 0) throw DomainError("word symbols must be >= 1");
}

}  // namespace

NatWord::NatWord(std::initializer_list<std::uint32_t> s) : symbols(s) { check_positive(symbols); }
NatWord::NatWord(std::vector<std::uint32_t> s) : symbols(std::move(s)) { check_positive(symbols); }

std::uint64_t NatWord::symbol_sum() const {
    std::uint64_t t = 0;
    for (auto v : symbols) t += v;
    return t;
}

BinaryWord::BinaryWord(std::initializer_list<std::uint8_t> s) : BinaryWord(std::vector<std::uint8_t>(s)) {}

BinaryWord::BinaryWord(std::vector<std::uint8_t> s) : symbols(std::move(s)) {
    for (auto v : symbols)
        if (v != 1 && v != 2) throw DomainError("binary word symbols must be 1 or 2");
}

BinaryWord::BinaryWord(std::string_view digits) {
    if (digits == kEmpty) return;
    for (char c : digits) {
        if (c != '1' && c != '2') throw ParseError("bad binary word '" + std::string(digits) + "'");
        symbols.push_back(static_cast<std::uint8_t>(c - '0'));
    }
}

BinaryWord BinaryWord::append(std::uint8_t s) const {
    if (s != 1 && s != 2) throw DomainError("binary word symbols must be 1 or 2");
    BinaryWord r = *this;
    r.symbols.push_back(s);
    return r;
}

BinaryWord BinaryWord::operator+(const BinaryWord& other) const {
    BinaryWord r = *this;
    r.symbols.insert(r.symbols.end(), other.symbols.begin(), other.symbols.end());
    return r;
}

PairWord::PairWord(std::initializer_list<PairSymbol> s) : PairWord(std::vector<PairSymbol>(s)) {}

PairWord::PairWord(std::vector<PairSymbol> s) : symbols(std::move(s)) {
    for (auto p : symbols)
        if (p.i == 0 || p.j == 0) throw DomainError("pair word components must be >= 1");
}

PairWord PairWord::append(PairSymbol s) const {
    if (s.i == 0 || s.j == 0) throw DomainError("pair word components must be >= 1");
    PairWord r = *this;
    r.symbols.push_back(s);
    return r;
}

PairWord parent(const PairWord& w) {
    if (w.empty()) throw DomainError("parent of the empty word");
    PairWord r = w;
    r.symbols.pop_back();
    return r;
}

std::pair<NatWord, NatWord> components(const PairWord& w) {
    NatWord a, b;
    for (auto p : w.symbols) {
        a.symbols.push_back(p.i);
        b.symbols.push_back(p.j);
    }
    return {a, b};
}

BinaryWord f_map(std::uint32_t n, bool infinite) {
    if (n == 0) throw DomainError("f is defined on positive integers");
    BinaryWord r;
    if (infinite) {
        r.symbols.assign(n, 2);
    } else {
        r.symbols.assign(n - 1, 2);
        r.symbols.push_back(1);
    }
    return r;
}

BinaryWord F_map(const NatWord& w, bool infinite) {
    if (infinite && w.empty()) throw DomainError("infinite branch needs a nonempty word");
    BinaryWord r;
    for (std::size_t k = 0; k < w.size(); ++k) {
        BinaryWord part = f_map(w.symbols[k], infinite && k + 1 == w.size());
        r.symbols.insert(r.symbols.end(), part.symbols.begin(), part.symbols.end());
    }
    return r;
}

BinaryWord F_map(const NatAddress& a) { return F_map(a.word, a.infinite); }

NatAddress F_inverse(const BinaryWord& b) {
    NatAddress out;
    std::uint32_t twos = 0;
    for (auto s : b.symbols) {
        if (s == 2) {
            ++twos;
        } else {
            out.word.symbols.push_back(twos + 1);
            twos = 0;
        }
    }
    if (twos > 0) {
        out.word.symbols.push_back(twos);
        out.infinite = true;
    }
    return out;
}

std::string to_string(const NatWord& w) {
    if (w.empty()) return std::string(kEmpty);
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += '.';
        s += std::to_string(w.symbols[k]);
    }
    return s;
}

std::string to_string(const NatAddress& a) {
    std::string s = to_string(a.word);
    if (a.infinite) s += kInf;
    return s;
}

std::string to_string(const BinaryWord& w) {
    if (w.empty()) return std::string(kEmpty);
    std::string s;
    for (auto v : w.symbols) s += static_cast<char>('0' + v);
    return s;
}

std::string to_string(const PairWord& w) {
    if (w.empty()) return std::string(kEmpty);
    std::string s;
    for (auto p : w.symbols) s += "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
    return s;
}

std::string to_string(Tail t) {
    switch (t) {
        case Tail::None: return "";
        case Tail::Second: return "(∅,∞)";
        case Tail::First: return "(∞,∅)";
        case Tail::Both: return "(∞,∞)";
    }
    return "";
}

std::string to_string(const PairWord& w, Tail t) {
    if (t == Tail::None) return to_string(w);
    return (w.empty() ? std::string() : to_string(w)) + to_string(t);
}

NatWord parse_nat_word(std::string_view s) {
    NatWord w;
    if (s.empty() || s == kEmpty) return w;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = s.find('.', start);
        w.symbols.push_back(parse_symbol(s.substr(start, dot == std::string_view::npos ? dot : dot - start)));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return w;
}

BinaryWord parse_binary_word(std::string_view s) { return BinaryWord(s); }

std::pair<PairWord, Tail> parse_pair_address(std::string_view s) {
    PairWord w;
    Tail tail = Tail::None;
    if (s.empty() || s == kEmpty) return {w, tail};
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (tail != Tail::None) throw ParseError("tail marker must be last in '" + std::string(s) + "'");
        if (s[pos] != '(') throw ParseError("expected '(' in '" + std::string(s) + "'");
        std::size_t close = s.find(')', pos);
        if (close == std::string_view::npos) throw ParseError("unclosed '(' in '" + std::string(s) + "'");
        std::string_view body = s.substr(pos + 1, close - pos - 1);
        std::size_t comma = body.find(',');
        if (comma == std::string_view::npos) throw ParseError("expected ',' in '" + std::string(s) + "'");
        std::string_view a = body.substr(0, comma), b = body.substr(comma + 1);
        if (a == kEmpty && b == kInf) tail = Tail::Second;
        else if (a == kInf && b == kEmpty) tail = Tail::First;
        else if (a == kInf && b == kInf) tail = Tail::Both;
        else w.symbols.push_back({parse_symbol(a), parse_symbol(b)});
        pos = close + 1;
    }
    return {w, tail};
}

PairWord parse_pair_word(std::string_view s) {
    auto [w, t] = parse_pair_address(s);
    if (t != Tail::None) throw ParseError("unexpected tail marker in '" + std::string(s) + "'");
    return w;
}

}  // namespace cq
