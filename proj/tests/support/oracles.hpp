#pragma once

// Reference implementations used only by tests. Each one is written
// independently of the library code it checks.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tweetpol/classifier.hpp"
#include "tweetpol/metrics.hpp"

namespace oracle {

// Well-formed UTF-8 byte sequences, one row per line of the standard table:
// a sequence matches a row when byte k lies in [lo[k], hi[k]] for every k.
struct Utf8Row {
  int length;
  std::uint8_t lo[4];
  std::uint8_t hi[4];
};

inline constexpr Utf8Row kUtf8Table[] = {
    {1, {0x00}, {0x7F}},
    {2, {0xC2, 0x80}, {0xDF, 0xBF}},
    {3, {0xE0, 0xA0, 0x80}, {0xE0, 0xBF, 0xBF}},
    {3, {0xE1, 0x80, 0x80}, {0xEC, 0xBF, 0xBF}},
    {3, {0xED, 0x80, 0x80}, {0xED, 0x9F, 0xBF}},
    {3, {0xEE, 0x80, 0x80}, {0xEF, 0xBF, 0xBF}},
    {4, {0xF0, 0x90, 0x80, 0x80}, {0xF0, 0xBF, 0xBF, 0xBF}},
    {4, {0xF1, 0x80, 0x80, 0x80}, {0xF3, 0xBF, 0xBF, 0xBF}},
    {4, {0xF4, 0x80, 0x80, 0x80}, {0xF4, 0x8F, 0xBF, 0xBF}},
};

bool utf8_valid(std::span<const std::uint8_t> bytes);

struct Decoded {
  std::u32string scalars;
  std::size_t replacements = 0;
};

// Maximal-subpart replacement driven by kUtf8Table: at each position take the
// longest prefix of some table row; a full row is one scalar, a partial or
// empty prefix is one U+FFFD covering max(1, prefix length) bytes.
Decoded utf8_decode(std::span<const std::uint8_t> bytes);

std::string to_utf8(std::u32string_view scalars);

// Counts each cell by a separate pass over the raw lists.
struct Recount {
  std::uint64_t tp, fp, fn, tn;
  double accuracy, precision, recall;
  bool precision_undefined, recall_undefined;
};
Recount recount(std::span<const double> preds, std::span<const int> labels, double threshold);

// Central differences of tweetpol::loss with respect to every weight and the
// bias, step h.
struct NumericGradient {
  std::vector<double> weights;
  double bias = 0.0;
};
NumericGradient numeric_gradient(const tweetpol::Model& model,
                                 std::span<const tweetpol::Example> batch, double h);

}  // namespace oracle
