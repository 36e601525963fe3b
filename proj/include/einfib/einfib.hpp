#pragma once

#include "einfib/core.hpp"
#include "einfib/linalg.hpp"
#include "einfib/exact.hpp"
#include "einfib/liealg.hpp"
#include "einfib/invariant_decomp.hpp"
#include "einfib/fibration.hpp"
#include "einfib/casimir.hpp"
#include "einfib/ricci.hpp"
#include "einfib/einstein.hpp"
#include "einfib/checks.hpp"
#include "einfib/catalog.hpp"
#include "einfib/report.hpp"
