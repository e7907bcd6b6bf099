#include "qes/detail/text.hpp"

#include <cctype>
#include <stdexcept>

namespace qes::detail {

namespace {

class Reader {
   public:
    explicit Reader(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        skip_ws();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    bool peek_ident() {
        skip_ws();
        return pos_ < s_.size() &&
               (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
    }
    std::string digits() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected digits");
        return std::string(s_.substr(b, pos_ - b));
    }
    std::string ident() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (b == pos_) fail("expected variable name");
        return std::string(s_.substr(b, pos_ - b));
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial text: " + what + " at offset " + std::to_string(pos_) +
                                    " in '" + std::string(s_) + "'");
    }

   private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

std::pair<std::string, unsigned> read_power(Reader& r) {
    std::string name = r.ident();
    unsigned e = 1;
    if (r.accept('^')) e = static_cast<unsigned>(std::stoul(r.digits()));
    return {name, e};
}

}  // namespace

std::vector<ParsedTerm> parse_terms(std::string_view text) {
    Reader r(text);
    std::vector<ParsedTerm> out;
    if (r.done()) r.fail("empty input");
    bool first = true;
    while (!r.done()) {
        bool negative = false;
        if (first) {
            negative = r.accept('-');
        } else if (r.accept('+')) {
            negative = false;
        } else if (r.accept('-')) {
            negative = true;
        } else {
            r.fail("expected '+' or '-'");
        }
        first = false;
        ParsedTerm t;
        if (r.peek_digit()) {
            t.coeff = BigInt(r.digits(), 10);
            while (r.accept('*')) t.powers.push_back(read_power(r));
        } else if (r.peek_ident()) {
            t.coeff = 1;
            t.powers.push_back(read_power(r));
            while (r.accept('*')) t.powers.push_back(read_power(r));
        } else {
            r.fail("expected a term");
        }
        if (negative) t.coeff = -t.coeff;
        out.push_back(std::move(t));
    }
    return out;
}

void write_term(std::string& out, const BigInt& coeff,
                const std::vector<std::pair<std::string, unsigned>>& powers, bool first) {
    const bool negative = coeff < 0;
    if (first) {
        if (negative) out += '-';
    } else {
        out += negative ? " - " : " + ";
    }
    BigInt mag = abs(coeff);
    bool wrote = false;
    if (mag != 1 || powers.empty()) {
        out += mag.get_str();
        wrote = true;
    }
    for (const auto& [name, e] : powers) {
        if (wrote) out += '*';
        out += name;
        if (e != 1) {
            out += '^';
            out += std::to_string(e);
        }
        wrote = true;
    }
}

}  // namespace qes::detail
