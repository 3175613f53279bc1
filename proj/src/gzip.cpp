#include <zlib.h>

#include "bitjson/bench.hpp"
#include "bitjson/error.hpp"

namespace bitjson {

std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> bytes) {
    z_stream stream{};
    // windowBits 15 + 16 selects the gzip wrapper
    if (deflateInit2(&stream, Z_BEST_COMPRESSION, Z_DEFLATED, 15 + 16, 9, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw Error("deflateInit2 failed");
    }
    std::vector<std::uint8_t> out(deflateBound(&stream, static_cast<uLong>(bytes.size())) + 32);
    stream.next_in = const_cast<Bytef*>(bytes.data());
    stream.avail_in = static_cast<uInt>(bytes.size());
    stream.next_out = out.data();
    stream.avail_out = static_cast<uInt>(out.size());
    const int status = deflate(&stream, Z_FINISH);
    const std::size_t produced = stream.total_out;
    deflateEnd(&stream);
    if (status != Z_STREAM_END) throw Error("deflate did not finish");
    out.resize(produced);
    return out;
}

std::size_t gzip_best(std::string_view text) {
    return gzip_compress({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()}).size();
}

}  // namespace bitjson
