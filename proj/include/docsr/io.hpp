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

#ifndef DOCSR_IO_HPP
#define DOCSR_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace docsr {

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

// Writes to a temp file in the target directory, then renames into place, so
// readers never observe a truncated file.
void write_file_atomic(const std::filesystem::path& path, const void* data, std::size_t size);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

} // namespace docsr

#endif // DOCSR_IO_HPP
