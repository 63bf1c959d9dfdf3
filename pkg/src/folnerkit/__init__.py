"""Exact Folner-set construction and shifted-product-set verification.

The package is organized around five surfaces:

* :mod:`folnerkit.groups`   -- coordinatized groups, exact arithmetic;
* :mod:`folnerkit.folner`   -- Folner families, defects, densities,
                               squaring certificates, thinning and
                               derived families;
* :mod:`folnerkit.sumsets`  -- pairwise product sets, shift witnesses,
                               finite-slice emptiness verifiers;
* :mod:`folnerkit.dynamics` -- the shift-system surrogate used to
                               extract witnesses greedily;
* :mod:`folnerkit.cli`      -- batch runner emitting JSON/CSV reports.

All arithmetic is exact (Python ints and fractions); nothing here uses
floating point for a certified quantity.
"""

__version__ = "0.1.0"
