// Copyright 2026 The entwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTWALK_ERRORS_H
#define ENTWALK_ERRORS_H

#include <stdexcept>
#include <string>

namespace entwalk {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is outside its documented range.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// A state or density failed one of its structural invariants.
class InvalidState : public Error {
   public:
    using Error::Error;
};

class EmptyPosition : public Error {
   public:
    using Error::Error;
};

class NonUnitaryCoin : public Error {
   public:
    using Error::Error;
};

class ImaginaryResidue : public Error {
   public:
    using Error::Error;
};

class ZeroInitialEntanglement : public Error {
   public:
    using Error::Error;
};

class ZeroSuccess : public Error {
   public:
    using Error::Error;
};

class UnnormalizedDistribution : public Error {
   public:
    using Error::Error;
};

class MissingSetting : public Error {
   public:
    using Error::Error;
};

class DegenerateCounts : public Error {
   public:
    using Error::Error;
};

}  // namespace entwalk

#endif  // ENTWALK_ERRORS_H
