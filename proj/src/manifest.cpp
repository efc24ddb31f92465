#include "unigini/manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "unigini/errors.hpp"

namespace unigini {

namespace {

std::string to_hex(const unsigned char* digest, unsigned int len) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

struct EvpCtx {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    ~EvpCtx() { EVP_MD_CTX_free(ctx); }
};

}  // namespace

std::string sha256_hex(const void* data, std::size_t size) {
    EvpCtx md;
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!md.ctx || EVP_DigestInit_ex(md.ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(md.ctx, data, size) != 1 ||
        EVP_DigestFinal_ex(md.ctx, digest, &len) != 1) {
        throw ConfigError("sha256 digest failed");
    }
    return to_hex(digest, len);
}

std::string sha256_file(const std::filesystem::path& path, std::uint64_t* bytes_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    EvpCtx md;
    if (!md.ctx || EVP_DigestInit_ex(md.ctx, EVP_sha256(), nullptr) != 1) {
        throw ConfigError("sha256 digest failed");
    }
    char buf[1 << 16];
    std::uint64_t total = 0;
    while (in) {
        in.read(buf, sizeof(buf));
        std::streamsize got = in.gcount();
        if (got > 0) {
            if (EVP_DigestUpdate(md.ctx, buf, static_cast<std::size_t>(got)) != 1) {
                throw ConfigError("sha256 digest failed");
            }
            total += static_cast<std::uint64_t>(got);
        }
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(md.ctx, digest, &len) != 1) {
        throw ConfigError("sha256 digest failed");
    }
    if (bytes_out) *bytes_out = total;
    return to_hex(digest, len);
}

std::string utc_timestamp_now() {
    std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", utc.tm_year + 1900,
                  utc.tm_mon + 1, utc.tm_mday, utc.tm_hour, utc.tm_min, utc.tm_sec);
    return buf;
}

void write_manifest(const std::filesystem::path& output_path, const RunManifest& manifest) {
    nlohmann::ordered_json doc;
    doc["command_line"] = manifest.command_line;
    doc["version"] = manifest.version;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const auto& in : manifest.inputs) {
        inputs.push_back({{"path", in.path}, {"sha256", in.sha256}, {"bytes", in.bytes}});
    }
    doc["inputs"] = inputs;
    doc["rows_in"] = manifest.rows_in;
    doc["rows_out"] = manifest.rows_out;
    doc["timestamp_utc"] = manifest.timestamp_utc;

    std::filesystem::path manifest_path = output_path;
    manifest_path += ".manifest.json";
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + manifest_path.string());
    out << doc.dump(2) << '\n';
}

}  // namespace unigini
