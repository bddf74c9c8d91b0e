// Copyright 2026 The swapsim Authors
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

#ifndef SWAPSIM_ERRORS_H
#define SWAPSIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace swapsim {

/// Base of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Photon-number cap would be exceeded.
struct CapacityError : Error {
    using Error::Error;
};

/// Operation needs a non-zero state.
struct DegenerateStateError : Error {
    using Error::Error;
};

/// Optical element is malformed (non-isometric matrix, duplicate paths, ...).
struct InvalidElementError : Error {
    using Error::Error;
};

struct InvalidParameterError : Error {
    using Error::Error;
};

struct EmptyDataError : Error {
    using Error::Error;
};

struct InvalidSettingsError : Error {
    using Error::Error;
};

/// Calibration target cannot be reached inside the search interval.
struct NoSolutionError : Error {
    using Error::Error;
};

/// Numerical invariant violated at runtime (e.g. probabilities not summing to one).
struct InvariantError : Error {
    using Error::Error;
};

}  // namespace swapsim

#endif  // SWAPSIM_ERRORS_H
