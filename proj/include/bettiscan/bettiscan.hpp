#pragma once

#include "arith.hpp"
#include "betti.hpp"
#include "error.hpp"
#include "hilbert.hpp"
#include "koszul.hpp"
#include "monomial.hpp"
#include "prime_field.hpp"
#include "scanner.hpp"
#include "verdict.hpp"
