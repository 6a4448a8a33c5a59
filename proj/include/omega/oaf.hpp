#pragma once

#include <string>
#include <string_view>

#include "omega/automaton.hpp"

namespace omega {

/// Reads one acceptor in OAF v1 (line-oriented, '#' comments):
///
///   oaf 1
///   type buchi|cobuchi|parity|muller|tmuller
///   alphabet <sym>...
///   states <n>
///   initial <q>
///   trans <q> <sym> <q'>                        (repeat)
///   acc states <q>...                           (buchi, cobuchi)
///   acc color <q> <c>                           (parity, one per state)
///   acc set <q>...                              (muller, repeat)
///   acc tset <q> <sym> <q'> [; <q> <sym> <q'>]  (tmuller, repeat)
///   complete sink                               (optional)
///
/// With `complete sink` missing transitions go to a fresh rejecting sink.
/// Throws ParseError plus the validation errors of validate().
Acceptor parse_oaf(std::string_view text);

/// Canonical OAF text: transitions in state/symbol order, sets ascending.
std::string print_oaf(const Acceptor& a);

/// Lasso literal `spoke:cycle`; symbols are '.'-separated, or one character
/// each when every symbol of the alphabet is a single character. Throws
/// ParseError, UnknownSymbol, InvalidLasso.
LassoWord parse_lasso(const Alphabet& alphabet, std::string_view text);

/// Word in the same notation.
Word parse_word(const Alphabet& alphabet, std::string_view text);

}  // namespace omega
