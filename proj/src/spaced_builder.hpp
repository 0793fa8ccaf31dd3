#pragma once

#include <string>
#include <string_view>

#include "tweetpol/utf8.hpp"

namespace tweetpol::detail {

// Output buffer for the substitution passes. A substitution swallows the
// whitespace on both of its sides and re-inserts exactly one space before
// the next visible scalar; the finished text is trimmed.
class SpacedBuilder {
 public:
  void put(char32_t cp) {
    if (utf8::is_space(cp)) {
      if (!swallow_space_) utf8::append(out_, cp);
      return;
    }
    swallow_space_ = false;
    if (pending_separator_) {
      if (!out_.empty()) out_.push_back(' ');
      pending_separator_ = false;
    }
    utf8::append(out_, cp);
  }

  void put_raw(std::string_view bytes) {
    std::size_t pos = 0;
    while (pos < bytes.size()) put(utf8::next(bytes, pos));
  }

  // `name` may be empty, in which case the substitution is a pure deletion
  // that still acts as a token boundary.
  void substitute(std::string_view name) {
    trim_back();
    if (!name.empty()) {
      if (!out_.empty()) out_.push_back(' ');
      out_.append(name);
    }
    pending_separator_ = true;
    swallow_space_ = true;
  }

  std::string finish() {
    trim_back();
    std::size_t pos = 0;
    std::size_t start = 0;
    while (pos < out_.size()) {
      const std::size_t before = pos;
      if (!utf8::is_space(utf8::next(out_, pos))) {
        start = before;
        break;
      }
      start = pos;
    }
    return out_.substr(start);
  }

 private:
  void trim_back() {
    while (!out_.empty()) {
      std::size_t start = out_.size() - 1;
      while (start > 0 &&
             (static_cast<unsigned char>(out_[start]) & 0xC0) == 0x80) {
        --start;
      }
      std::size_t pos = start;
      if (!utf8::is_space(utf8::next(out_, pos))) break;
      out_.resize(start);
    }
  }

  std::string out_;
  bool pending_separator_ = false;
  bool swallow_space_ = false;
};

}  // namespace tweetpol::detail
