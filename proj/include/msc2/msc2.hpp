#pragma once

// Umbrella header: exact structure-constant toolkit for 2-dimensional
// algebras (fields, linear algebra, catalog, automorphisms, derivations,
// isomorphism search, verification campaigns).

#include "msc2/automorphisms.hpp"
#include "msc2/catalog.hpp"
#include "msc2/derivations.hpp"
#include "msc2/errors.hpp"
#include "msc2/fields.hpp"
#include "msc2/isomorphism.hpp"
#include "msc2/linalg.hpp"
#include "msc2/msc.hpp"
#include "msc2/verify.hpp"
