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
#ifndef SA_SYM_PRINT_HPP
#define SA_SYM_PRINT_HPP

#include <string>

#include "sa/sym/expr.hpp"

namespace sa::sym {

// Infix text in the model-file syntax.  Output is deterministic.
std::string to_string(Expr e);

}  // namespace sa::sym

#endif
