#pragma once

#include <string>
#include <vector>

#include "tcd/parser.hpp"
#include "tcd/type.hpp"

namespace tcd::testing {

inline TypeEnv is_int_globals() {
  return TypeEnv{{"Number", parse_type("(text: string) => number")},
                 {"isNaN", parse_type("(value: number) => boolean")},
                 {"parseInt", parse_type("(text: string, radix: number) => number")}};
}

/// A function checking whether a string holds an integer, cut off inside
/// the first argument of parseInt.
inline const std::string kIsIntPrefix =
    "function is_int(text: string): boolean {\n"
    "  let num: number;\n"
    "  num = Number(text);\n"
    "  return isNaN(num) == false &&\n"
    "    parseInt(num";

struct CompletionOption {
  std::string text;
  bool accepted;
};

inline const std::vector<CompletionOption> kIsIntOptions = {
    {";", false}, {"ber", false}, {"()", false}, {", 10)", false}, {".toString()", true}};

}  // namespace tcd::testing
