#pragma once

#include "sullivan/basis.hpp"
#include "sullivan/cohomology.hpp"
#include "sullivan/corpus.hpp"
#include "sullivan/errors.hpp"
#include "sullivan/generator_table.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/model.hpp"
#include "sullivan/monomial.hpp"
#include "sullivan/parse.hpp"
#include "sullivan/polynomial.hpp"
#include "sullivan/purity.hpp"
#include "sullivan/random_model.hpp"
#include "sullivan/rank.hpp"
#include "sullivan/rational.hpp"
#include "sullivan/structure.hpp"
