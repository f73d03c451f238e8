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

#ifndef DOCSR_ERROR_HPP
#define DOCSR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace docsr {

enum class Errc {
    file_not_found,
    unsupported_format,
    corrupt_image,
    io_error,
    channels_mismatch,
    size_mismatch,
    image_too_small,
    invalid_kernel,
    even_window,
    empty_histogram,
    external_output_missing,
    external_size_mismatch,
    empty_dataset,
    config_invalid,
    all_entries_failed,
    empty_input,
};

const char* errc_name(Errc code);

/// Domain error carrying a machine-checkable code plus a human message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace docsr

#endif // DOCSR_ERROR_HPP
