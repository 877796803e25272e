"""Computational tools for the first Grigorchuk group and its level quotients.

Modules:

* ``words``     free-group words, substitutions, relator families
* ``tree``      the action on the binary tree and the branch word problem
* ``stab``      Schreier rewriting of the level-1 stabiliser and pair maps
* ``perms``     permutation groups with a stabiliser chain
* ``quotients`` the finite quotients G_n and facts checked in them
* ``cosets``    finite presentations and Todd-Coxeter enumeration
* ``linalg``    Smith normal form, lattices and F2 elimination
* ``nilq4``     class-4 metabelian collection and the groups Q_n
* ``pquotient`` 2-quotients, 2-covers and multiplier ranks
* ``limits``    invariant homomorphisms of kernels, direct-limit calculator
* ``report``    expected-value manifest and JSON reports
* ``cli``       command-line front end
"""

__version__ = "0.1.0"
