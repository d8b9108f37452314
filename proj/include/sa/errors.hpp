/* Copyright 2026 The sa Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
#ifndef SA_ERRORS_HPP
#define SA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problems with what the user handed us; the CLI maps these to exit code 1.
struct InputError : Error {
    using Error::Error;
};

struct SyntaxError : InputError {
    SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

struct UndeclaredSymbol : InputError {
    using InputError::InputError;
};

struct DuplicateDeclaration : InputError {
    using InputError::InputError;
};

struct ArityMismatch : InputError {
    using InputError::InputError;
};

struct NotInputAffine : InputError {
    NotInputAffine(const std::string& equation, const std::string& input)
        : InputError("equation for " + equation + " is not affine in input " + input),
          equation(equation), input(input) {}
    std::string equation;
    std::string input;
};

struct UnknownVariant : InputError {
    using InputError::InputError;
};

// Expression-size budget hit; the CLI maps this to exit code 2.
struct ResourceLimitExceeded : Error {
    ResourceLimitExceeded(std::size_t budget, std::size_t reached)
        : Error("expression budget of " + std::to_string(budget) + " nodes exceeded"),
          budget(budget), reached(reached) {}
    std::size_t budget;
    std::size_t reached;
};

struct UnsupportedDerivative : Error {
    using Error::Error;
};

struct UnsupportedExpression : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct EvaluationError : Error {
    using Error::Error;
};

struct PoleEncountered : EvaluationError {
    PoleEncountered() : EvaluationError("denominator evaluates to zero") {}
};

struct NonIntegerExponent : EvaluationError {
    NonIntegerExponent() : EvaluationError("symbolic exponent evaluates to a non-integer") {}
};

struct ZeroToZero : EvaluationError {
    ZeroToZero() : EvaluationError("0^0 during evaluation") {}
};

struct UnboundSymbol : EvaluationError {
    explicit UnboundSymbol(const std::string& name) : EvaluationError("no value bound for " + name) {}
};

struct DegenerateSampling : Error {
    explicit DegenerateSampling(std::size_t attempts)
        : Error("every sample point hit a pole after " + std::to_string(attempts) + " attempts") {}
};

struct InconsistentWitness : Error {
    InconsistentWitness(std::size_t full, std::size_t deleted)
        : Error("column deletion raised rank from " + std::to_string(full) + " to " + std::to_string(deleted)) {}
};

}  // namespace sa

#endif
