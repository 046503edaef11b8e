#ifndef FREEPLANE_HPP
#define FREEPLANE_HPP

#include "freeplane/confinement.hpp"
#include "freeplane/dot.hpp"
#include "freeplane/encoder.hpp"
#include "freeplane/errors.hpp"
#include "freeplane/extension.hpp"
#include "freeplane/fixtures.hpp"
#include "freeplane/group.hpp"
#include "freeplane/harness.hpp"
#include "freeplane/io_json.hpp"
#include "freeplane/lattice.hpp"
#include "freeplane/morphism.hpp"
#include "freeplane/random.hpp"
#include "freeplane/structure.hpp"
#include "freeplane/term.hpp"
#include "freeplane/validate.hpp"

#endif
