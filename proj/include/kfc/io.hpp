#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "kfc/bordered.hpp"
#include "kfc/involutive.hpp"

namespace kfc {

// Complex file format (one canonical schema, bit-exact round trip):
//   ring: F2|F2U|R|F2UV
//   gen <label> <g1> <g2>        (F2U: Alexander and Maslov; UV-family: gr_U and gr_V;
//                                 F2: gr_U and gr_V)
//   d <from> <to> <monomial>     monomials written 1, U^k, V^k, U^aV^b
//   iota <from> <to>             optional involution block (F2 entries on the hat truncation)
//
// Type-D/A module format:
//   module: typeD | typeA
//   idem <gen> 0|1
//   darrow <from> <to> <rho-word>
//   aop <gen> <rho-word...> U^j <gen>
//
// Map format:
//   source: <path>   target: <path>
//   map <from> <to> <monomial>

struct ParsedComplex {
    Complex cx;
    bool has_iota = false;
    std::vector<std::pair<std::string, std::string>> iota_entries;
};

struct ParsedFile {
    std::variant<ParsedComplex, TypeD, TypeA> value;
};

std::string print_complex(const Complex& c);
std::string print_iota_block(const Complex& c, const GMap& hat_iota);
std::string print_typeD(const TypeD& d);
std::string print_typeA(const TypeA& a);
std::string print_map_block(const GMap& f);
std::string print_mono(Mono m);

ParsedFile parse_file_text(const std::string& text);
ParsedComplex parse_complex_text(const std::string& text);

// Attach the parsed iota block (if any) as an IotaComplex; flavor from the ring.
IotaComplex iota_complex_from_parsed(const ParsedComplex& pc);

}  // namespace kfc
