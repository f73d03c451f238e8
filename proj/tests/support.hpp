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

#ifndef DOCSR_TESTS_SUPPORT_HPP
#define DOCSR_TESTS_SUPPORT_HPP

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "docsr/raster.hpp"

namespace support {

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("docsr-test-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline docsr::Raster make_raster(int w, int h, std::initializer_list<int> values) {
    docsr::Raster r = docsr::Raster::make(w, h, 1);
    std::size_t i = 0;
    for (int v : values)
        r.samples[i++] = static_cast<std::uint8_t>(v);
    return r;
}

inline docsr::BinaryMask make_mask(int w, int h, std::initializer_list<int> values) {
    docsr::BinaryMask m = docsr::BinaryMask::make(w, h);
    std::size_t i = 0;
    for (int v : values)
        m.foreground[i++] = v ? 1 : 0;
    return m;
}

inline docsr::Raster random_raster(std::mt19937_64& rng, int w, int h, int channels = 1) {
    docsr::Raster r = docsr::Raster::make(w, h, channels);
    std::uniform_int_distribution<int> dist(0, 255);
    for (auto& s : r.samples)
        s = static_cast<std::uint8_t>(dist(rng));
    return r;
}

inline docsr::BinaryMask random_mask(std::mt19937_64& rng, int w, int h) {
    docsr::BinaryMask m = docsr::BinaryMask::make(w, h);
    std::uniform_int_distribution<int> dist(0, 1);
    for (auto& f : m.foreground)
        f = static_cast<std::uint8_t>(dist(rng));
    return m;
}

/// Runs the built CLI binary; returns the exit code (or -1 on harness
/// failure). Output can be redirected by the caller inside `args`.
inline int run_cli(const std::string& args) {
    const std::string cmd = std::string(DOCSR_CLI_PATH) + " " + args;
    const int status = std::system(cmd.c_str());
    if (status == -1)
        return -1;
    if (WIFEXITED(status))
        return WEXITSTATUS(status);
    return -1;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::string out;
    if (FILE* f = std::fopen(path.string().c_str(), "rb")) {
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0)
            out.append(buf, n);
        std::fclose(f);
    }
    return out;
}

} // namespace support

#endif // DOCSR_TESTS_SUPPORT_HPP
