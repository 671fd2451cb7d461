#include "stitcher/hashing.hpp"

#include "stitcher/errors.hpp"
#include "stitcher/util.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>

namespace stitcher {

std::string_view to_string(HashAlgorithm algo) {
    switch (algo) {
    case HashAlgorithm::Sha256: return "sha256";
    case HashAlgorithm::Sha1: return "sha1";
    case HashAlgorithm::Md5: return "md5";
    }
    return "sha256";
}

std::optional<HashAlgorithm> hash_algorithm_from_string(std::string_view name) {
    if (name == "sha256") return HashAlgorithm::Sha256;
    if (name == "sha1") return HashAlgorithm::Sha1;
    if (name == "md5") return HashAlgorithm::Md5;
    return std::nullopt;
}

std::size_t digest_hex_length(HashAlgorithm algo) {
    switch (algo) {
    case HashAlgorithm::Sha256: return 64;
    case HashAlgorithm::Sha1: return 40;
    case HashAlgorithm::Md5: return 32;
    }
    return 64;
}

namespace {

const EVP_MD* evp_md(HashAlgorithm algo) {
    switch (algo) {
    case HashAlgorithm::Sha256: return EVP_sha256();
    case HashAlgorithm::Sha1: return EVP_sha1();
    case HashAlgorithm::Md5: return EVP_md5();
    }
    return EVP_sha256();
}

struct CtxDeleter {
    void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using CtxPtr = std::unique_ptr<EVP_MD_CTX, CtxDeleter>;

CtxPtr make_ctx(HashAlgorithm algo) {
    CtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestInit_ex(ctx.get(), evp_md(algo), nullptr) != 1)
        throw Error("digest initialization failed");
    return ctx;
}

std::string finish(EVP_MD_CTX* ctx) {
    unsigned char out[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx, out, &len) != 1)
        throw Error("digest finalization failed");
    return to_hex({out, len});
}

} // namespace

std::string digest_hex(HashAlgorithm algo, std::span<const std::uint8_t> bytes) {
    auto ctx = make_ctx(algo);
    if (!bytes.empty() &&
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1)
        throw Error("digest update failed");
    return finish(ctx.get());
}

std::optional<std::string> digest_file_hex(HashAlgorithm algo,
                                           const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        return std::nullopt;
    auto ctx = make_ctx(algo);
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        if (EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount())) != 1)
            throw Error("digest update failed");
    }
    if (in.bad())
        return std::nullopt;
    return finish(ctx.get());
}

} // namespace stitcher
