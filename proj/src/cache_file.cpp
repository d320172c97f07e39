#include "cfn/cache_file.hpp"

#include "cfn/recurrence.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfn {

namespace {

constexpr std::array<char, 4> kMagic = {'C', 'F', 'N', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff), char((v >> 24) & 0xff)};
    os.write(b, 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("truncated record");
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
}

}  // namespace

std::size_t load_rank3_cache(const std::filesystem::path& file, std::ostream& diag) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return 0;
    std::vector<std::pair<Rank3Label, Polynomial>> records;
    try {
        std::array<char, 4> magic{};
        if (!in.read(magic.data(), 4) || magic != kMagic) throw std::runtime_error("bad magic");
        std::uint32_t count = get_u32(in);
        for (std::uint32_t r = 0; r < count; ++r) {
            std::array<int, 6> v{};
            for (int& x : v) x = int(std::int32_t(get_u32(in)));
            Rank3Label l{v[0], v[1], v[2], v[3], v[4], v[5]};
            if (!l.admissible()) throw std::runtime_error("inadmissible label " + l.to_string());
            std::uint32_t len = get_u32(in);
            std::string text(len, '\0');
            if (!in.read(text.data(), len)) throw std::runtime_error("truncated polynomial");
            records.emplace_back(l, Polynomial::parse_text(rank3_alphabet(), text));
        }
    } catch (const std::exception& e) {
        diag << "warning: ignoring cache file " << file.string() << ": " << e.what() << "\n";
        return 0;
    }
    for (const auto& [l, p] : records) rank3_cache_insert(l, p);
    return records.size();
}

void save_rank3_cache(const std::filesystem::path& file) {
    auto entries = rank3_cache_snapshot();
    std::ostringstream buf;
    buf.write(kMagic.data(), 4);
    put_u32(buf, std::uint32_t(entries.size()));
    for (const auto& [l, p] : entries) {
        for (int x : {l.a, l.b, l.c, l.d, l.e, l.f}) put_u32(buf, std::uint32_t(std::int32_t(x)));
        std::string text = p.to_text();
        put_u32(buf, std::uint32_t(text.size()));
        buf.write(text.data(), std::streamsize(text.size()));
    }
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        const std::string bytes = buf.str();
        out.write(bytes.data(), std::streamsize(bytes.size()));
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

}  // namespace cfn
