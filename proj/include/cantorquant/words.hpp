#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cq {

// Word over the positive integers. Printed dot-separated ("1.3"); empty word prints as "∅".
struct NatWord {
    std::vector<std::uint32_t> symbols;

    NatWord() = default;
    NatWord(std::initializer_list<std::uint32_t> s);
    explicit NatWord(std::vector<std::uint32_t> s);

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    std::uint64_t symbol_sum() const;

    auto operator<=>(const NatWord&) const = default;
    bool operator==(const NatWord&) const = default;
};

// Word over {1,2}. Printed as a digit string ("121").
struct BinaryWord {
    std::vector<std::uint8_t> symbols;

    BinaryWord() = default;
    BinaryWord(std::initializer_list<std::uint8_t> s);
    explicit BinaryWord(std::vector<std::uint8_t> s);
    explicit BinaryWord(std::string_view digits);

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    BinaryWord append(std::uint8_t s) const;
    BinaryWord operator+(const BinaryWord& other) const;

    auto operator<=>(const BinaryWord&) const = default;
    bool operator==(const BinaryWord&) const = default;
};

struct PairSymbol {
    std::uint32_t i = 1;
    std::uint32_t j = 1;
    auto operator<=>(const PairSymbol&) const = default;
    bool operator==(const PairSymbol&) const = default;
};

// Word over pairs of positive integers. Printed as "(1,2)(3,1)".
struct PairWord {
    std::vector<PairSymbol> symbols;

    PairWord() = default;
    PairWord(std::initializer_list<PairSymbol> s);
    explicit PairWord(std::vector<PairSymbol> s);

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    PairWord append(PairSymbol s) const;

    auto operator<=>(const PairWord&) const = default;
    bool operator==(const PairWord&) const = default;
};

// Tail unions attached to a pair word w = w^- (i,j):
//   Second: (∅,∞) = union over j' >= 1 of J_{w^-(i, j+j')}
//   First:  (∞,∅) = union over i' >= 1 of J_{w^-(i+i', j)}
//   Both:   (∞,∞) = union over i',j' >= 1 of J_{w^-(i+i', j+j')}
enum class Tail { None, Second, First, Both };

// A natural word, optionally ending in the infinite branch (last symbol read as (k,∞)).
struct NatAddress {
    NatWord word;
    bool infinite = false;
    bool operator==(const NatAddress&) const = default;
};

PairWord parent(const PairWord& w);
std::pair<NatWord, NatWord> components(const PairWord& w);

// f(n) = 2^(n-1) 1 and f(n,∞) = 2^n.
BinaryWord f_map(std::uint32_t n, bool infinite = false);
// Concatenation of f over the symbols; the last symbol takes the infinite branch when requested.
BinaryWord F_map(const NatWord& w, bool infinite = false);
BinaryWord F_map(const NatAddress& a);
NatAddress F_inverse(const BinaryWord& b);

std::string to_string(const NatWord& w);
std::string to_string(const NatAddress& a);
std::string to_string(const BinaryWord& w);
std::string to_string(const PairWord& w);
std::string to_string(Tail t);
std::string to_string(const PairWord& w, Tail t);

NatWord parse_nat_word(std::string_view s);
BinaryWord parse_binary_word(std::string_view s);
PairWord parse_pair_word(std::string_view s);
// Pair word with an optional tail suffix, e.g. "(1,1)(∞,∅)".
std::pair<PairWord, Tail> parse_pair_address(std::string_view s);

}  // namespace cq
