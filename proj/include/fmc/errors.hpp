/*
Copyright 2026 The fmcodec Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef FMC_ERRORS_HPP
#define FMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fmc {

// Malformed or inconsistent serialized data: bad magic, mismatched counts,
// corrupt payload sections.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input ends before the header-declared payload does.
class TruncationError : public FormatError {
public:
    using FormatError::FormatError;
};

// Well-formed data that asks for something outside this codec's envelope,
// e.g. a 24-bit value width.
class UnsupportedError : public FormatError {
public:
    using FormatError::FormatError;
};

} // namespace fmc

#endif // FMC_ERRORS_HPP
