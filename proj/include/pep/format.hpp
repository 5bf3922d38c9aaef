#pragma once

#include <string>
#include <string_view>

#include "pep/instance.hpp"
#include "pep/reductions.hpp"

namespace pep {

/// Line-based instance text:
///
///     variant plain|dir|codir|coanddir
///     sigma 0 1
///     gamma a b
///     u 0 = a b        (empty right side = ε)
///     v 0 = a
///     R = ( 0 | 1 ) +
///     Rp = <regex> | none | all | lenpred [start split]
///
/// Lines starting with `#` are comments. Rp may be omitted for plain and
/// coanddir. Errors are ParseError with 1-based line and column.
PepInstance parse_instance(std::string_view text);
/// Canonical text; parse_instance(format_instance(i)) prints back identically.
std::string format_instance(const PepInstance& inst);

///     upsilon a b c
///     rule a b -> b c
///     P1 = <regex over Υ>
///     P2 = <regex over Υ>
SemiThueSystem parse_semithue(std::string_view text);
std::string format_semithue(const SemiThueSystem& s);

///     sigma x y
///     gamma a b
///     u x = a b
///     v x = a
PcpInstance parse_pcp(std::string_view text);
std::string format_pcp(const PcpInstance& p);

/// Whole file into a string; throws Error naming the path on failure.
std::string read_file(const std::string& path);

}  // namespace pep
