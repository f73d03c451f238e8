// Copyright 2026 the docsr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "docsr/io.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <system_error>

#include "docsr/error.hpp"

namespace docsr {

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        fail(Errc::file_not_found, path.string());
    std::FILE* f = std::fopen(path.string().c_str(), "rb");
    if (!f)
        fail(Errc::io_error, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes;
    std::uint8_t buf[65536];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0)
        bytes.insert(bytes.end(), buf, buf + n);
    const bool bad = std::ferror(f) != 0;
    std::fclose(f);
    if (bad)
        fail(Errc::io_error, "read failed for " + path.string());
    return bytes;
}

void write_file_atomic(const std::filesystem::path& path, const void* data, std::size_t size) {
    static std::atomic<unsigned> counter{0};
    const auto ticks = std::chrono::steady_clock::now().time_since_epoch().count();
    std::filesystem::path tmp = path;
    tmp += ".tmp-" + std::to_string(ticks) + "-" + std::to_string(counter.fetch_add(1));

    std::FILE* f = std::fopen(tmp.string().c_str(), "wb");
    if (!f)
        fail(Errc::io_error, "cannot create " + tmp.string() +
                                 " (does the parent directory exist?)");
    const std::size_t written = size ? std::fwrite(data, 1, size, f) : 0;
    const bool flush_ok = std::fflush(f) == 0;
    std::fclose(f);
    if (written != size || !flush_ok) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        fail(Errc::io_error, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(Errc::io_error, "cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    write_file_atomic(path, text.data(), text.size());
}

} // namespace docsr
