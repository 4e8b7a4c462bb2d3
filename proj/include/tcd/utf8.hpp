#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tcd {

class Utf8Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decodes UTF-8; throws Utf8Error on malformed input.
std::u32string from_utf8(std::string_view s);
std::string to_utf8(std::u32string_view s);
std::string to_utf8(char32_t c);

}  // namespace tcd
