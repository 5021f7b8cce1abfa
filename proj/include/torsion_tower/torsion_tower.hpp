#pragma once

#include "torsion_tower/batch.hpp"
#include "torsion_tower/catalog.hpp"
#include "torsion_tower/config.hpp"
#include "torsion_tower/csv.hpp"
#include "torsion_tower/errors.hpp"
#include "torsion_tower/fp_group.hpp"
#include "torsion_tower/orbifold_spec.hpp"
#include "torsion_tower/proj_line.hpp"
#include "torsion_tower/relation_matrix.hpp"
#include "torsion_tower/residue_arith.hpp"
#include "torsion_tower/smith_form.hpp"
#include "torsion_tower/svg_plot.hpp"
#include "torsion_tower/tr_stats.hpp"
