#include <nilnov/text.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

#include <nilnov/error.hpp>

namespace nilnov::text
{

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

std::vector<Line> lines(std::string_view src)
{
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= src.size()) {
        auto nl = src.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = src.size();
        }
        ++number;
        auto raw = src.substr(pos, nl - pos);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        auto t = trim(raw);
        if (!t.empty()) {
            out.push_back({number, std::move(t)});
        }
        pos = nl + 1;
    }
    return out;
}

bool is_identifier(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s, std::size_t line, std::size_t column)
{
    std::string str(s);
    if (!str.empty() && str[0] == '+') {
        str.erase(0, 1);
    }
    std::size_t digits_from = (!str.empty() && str[0] == '-') ? 1 : 0;
    if (str.size() == digits_from) {
        throw SyntaxError("expected an integer, got '" + std::string(s) + "'", line, column);
    }
    for (std::size_t k = digits_from; k < str.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(str[k]))) {
            throw SyntaxError("expected an integer, got '" + std::string(s) + "'", line, column);
        }
    }
    return mpz_class(str, 10);
}

mpq_class parse_rational(std::string_view s, std::size_t line, std::size_t column)
{
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return mpq_class(parse_integer(s, line, column));
    }
    mpz_class p = parse_integer(s.substr(0, slash), line, column);
    mpz_class q = parse_integer(s.substr(slash + 1), line, column + slash + 1);
    if (q == 0) {
        throw SyntaxError("zero denominator", line, column);
    }
    mpq_class r(p, q);
    r.canonicalize();
    return r;
}

std::vector<WordToken> word_tokens(std::string_view src, std::size_t line, std::size_t column0)
{
    std::vector<WordToken> out;
    std::size_t k = 0;
    while (k < src.size()) {
        if (std::isspace(static_cast<unsigned char>(src[k]))) {
            ++k;
            continue;
        }
        std::size_t start = k;
        while (k < src.size() && !std::isspace(static_cast<unsigned char>(src[k]))) {
            ++k;
        }
        auto tok = src.substr(start, k - start);
        std::size_t col = column0 + start;
        if (tok == "1") {
            continue;
        }
        auto caret = tok.find('^');
        std::string_view name = tok.substr(0, caret);
        if (!is_identifier(name)) {
            throw SyntaxError("bad generator token '" + std::string(tok) + "'", line, col);
        }
        mpz_class e = 1;
        if (caret != std::string_view::npos) {
            e = parse_integer(tok.substr(caret + 1), line, col + caret + 1);
        }
        out.push_back({std::string(name), e, col});
    }
    return out;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace nilnov::text
