/*
   Copyright 2026 The anops Authors.

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

#pragma once

#include <stdexcept>
#include <string>

namespace anops {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0, std::string field = {})
        : Error(what), line_(line), field_(std::move(field)) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

// λ lies on the sampled symbol curve, so no winding number exists.
class PointOnCurve : public Error {
public:
    using Error::Error;
};

// T − λ is not Fredholm.
class EssentialPoint : public PointOnCurve {
public:
    using PointOnCurve::PointOnCurve;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotStabilized : public Error {
public:
    using Error::Error;
};

class NotHyponormal : public Error {
public:
    using Error::Error;
};

class NotAN : public Error {
public:
    using Error::Error;
};

class TemplateMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace anops
