#pragma once

#include "tensorsq/abelian.hpp"
#include "tensorsq/bounds.hpp"
#include "tensorsq/cache.hpp"
#include "tensorsq/catalog.hpp"
#include "tensorsq/coset_enum.hpp"
#include "tensorsq/error.hpp"
#include "tensorsq/group_ops.hpp"
#include "tensorsq/group_table.hpp"
#include "tensorsq/isomorphism.hpp"
#include "tensorsq/presentation.hpp"
#include "tensorsq/record.hpp"
#include "tensorsq/suite.hpp"
#include "tensorsq/tensor.hpp"
