#include "bitblast/bitvec_io.hpp"

#include <cctype>
#include <stdexcept>

namespace bitblast {

namespace {

[[noreturn]] void bad(const std::string& text, const std::string& why) {
    throw std::invalid_argument("bad bit-vector assignment '" + text + "': " + why);
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

std::pair<std::string, std::vector<uint8_t>> parse_assignment(const std::string& text) {
    size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0) bad(text, "expected name=value:width");
    std::string name = text.substr(0, eq);

    size_t colon = text.rfind(':');
    if (colon == std::string::npos || colon <= eq) bad(text, "missing ':width'");
    std::string value = text.substr(eq + 1, colon - eq - 1);
    std::string width_str = text.substr(colon + 1);
    if (width_str.empty()) bad(text, "missing width");
    for (char c : width_str)
        if (!std::isdigit(static_cast<unsigned char>(c))) bad(text, "width is not a number");
    long width = std::stol(width_str);
    if (width < 1 || width > 1 << 20) bad(text, "width out of range");

    // Bits of the value, most significant first; bit i maps to array index i.
    std::vector<uint8_t> bits(static_cast<size_t>(width), 0);
    auto set_from_lsb = [&](size_t lsb_pos, int bit) {
        // lsb_pos counts from the value's least significant end.
        if (bit == 0) return true;
        if (lsb_pos >= bits.size()) return false; // value wider than declared
        bits[bits.size() - 1 - lsb_pos] = static_cast<uint8_t>(bit);
        return true;
    };

    if (value.rfind("0x", 0) == 0 || value.rfind("0X", 0) == 0) {
        std::string digits = value.substr(2);
        if (digits.empty()) bad(text, "empty hex value");
        size_t pos = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            int d = hex_digit(*it);
            if (d < 0) bad(text, std::string("bad hex digit '") + *it + "'");
            for (int b = 0; b < 4; ++b, ++pos)
                if (!set_from_lsb(pos, (d >> b) & 1))
                    bad(text, "value does not fit in " + width_str + " bit(s)");
        }
    } else if (value.rfind("0b", 0) == 0 || value.rfind("0B", 0) == 0) {
        std::string digits = value.substr(2);
        if (digits.empty()) bad(text, "empty binary value");
        size_t pos = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it, ++pos) {
            if (*it != '0' && *it != '1') bad(text, "bad binary digit");
            if (!set_from_lsb(pos, *it - '0'))
                bad(text, "value does not fit in " + width_str + " bit(s)");
        }
    } else {
        bad(text, "value must start with 0x or 0b");
    }

    return {std::move(name), std::move(bits)};
}

std::string format_assignment(const std::string& name, const std::vector<uint8_t>& bits) {
    size_t width = bits.size();
    size_t digits = (width + 3) / 4;
    std::string hex(digits, '0');
    for (size_t i = 0; i < width; ++i) {
        if (!bits[i]) continue;
        size_t lsb_pos = width - 1 - i;
        size_t digit_idx = digits - 1 - lsb_pos / 4;
        int nibble_bit = static_cast<int>(lsb_pos % 4);
        int cur = hex_digit(hex[digit_idx]);
        cur |= 1 << nibble_bit;
        hex[digit_idx] = "0123456789abcdef"[cur];
    }
    return name + "=0x" + hex + ":" + std::to_string(width);
}

} // namespace bitblast
