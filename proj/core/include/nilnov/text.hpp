#ifndef NILNOV_TEXT_HPP
#define NILNOV_TEXT_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

// Shared lexical helpers for the line-based input formats.
namespace nilnov::text
{

struct Line {
    std::size_t number; // 1-based
    std::string content; // comment stripped, trimmed
};

// Split into non-empty lines with `#` comments removed.
std::vector<Line> lines(std::string_view src);

struct WordToken {
    std::string name;
    mpz_class exp;
    std::size_t column; // 1-based
};

// Tokens `g` or `g^k` separated by whitespace. Columns are offset by `column0`.
std::vector<WordToken> word_tokens(std::string_view src, std::size_t line, std::size_t column0 = 1);

bool is_identifier(std::string_view s);

// `p/q` or an integer. Throws SyntaxError.
mpq_class parse_rational(std::string_view s, std::size_t line = 0, std::size_t column = 0);
mpz_class parse_integer(std::string_view s, std::size_t line = 0, std::size_t column = 0);

std::string trim(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);

std::string read_file(const std::string &path);

} // namespace nilnov::text

#endif
