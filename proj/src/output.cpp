#include "bohm/output.hpp"

#include <array>
#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "bohm/errors.hpp"

namespace bohm {

namespace {

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new()) {
        if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
            EVP_MD_CTX_free(ctx_);
            throw IoError("SHA-256 unavailable");
        }
    }
    ~Sha256() { EVP_MD_CTX_free(ctx_); }
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(const char* data, std::size_t n) { EVP_DigestUpdate(ctx_, data, n); }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx_, md.data(), &len);
        std::string out;
        for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", md[i]);
        return out;
    }

private:
    EVP_MD_CTX* ctx_;
};

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    Sha256 h;
    std::array<char, 1 << 16> buf{};
    while (in.read(buf.data(), buf.size()) || in.gcount() > 0) {
        h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

std::string sha256_text(const std::string& text) {
    Sha256 h;
    h.update(text.data(), text.size());
    return h.hex();
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{}", v);
}

Csv::Csv(std::initializer_list<std::string> header) {
    bool first = true;
    for (const auto& h : header) {
        text_ += (first ? "" : ",") + h;
        first = false;
    }
    text_ += '\n';
}

Csv& Csv::row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        text_ += (first ? "" : ",") + format_number(v);
        first = false;
    }
    text_ += '\n';
    return *this;
}

Csv& Csv::row(const std::string& first, std::initializer_list<double> values) {
    text_ += first;
    for (double v : values) text_ += "," + format_number(v);
    text_ += '\n';
    return *this;
}

Csv& Csv::row_with_tail(std::initializer_list<double> values, const std::string& last) {
    for (double v : values) text_ += format_number(v) + ",";
    text_ += last + '\n';
    return *this;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputSet::write(const std::string& name, const std::string& content) {
    const std::filesystem::path p = dir_ / name;
    write_file(p, content);
    files_.push_back({name, sha256_file(p), std::filesystem::file_size(p)});
}

}  // namespace bohm
