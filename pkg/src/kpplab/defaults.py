"""Single table of numerical defaults.

Every tolerance, grid size and seed used anywhere in the package lives here;
the CLI exposes the same names as flags and ``--config`` keys.
"""

DEFAULTS = {
    # nonlinearity validation
    "grid_size": 10_000,          # interior sample points for assumption checks
    "strictness_eps": 1e-12,      # strictness margin for the decreasing-ratio test
    # radial shooting
    "rel_tol": 1e-10,
    "abs_tol": 1e-12,
    "root_tol": 1e-10,            # width of the final root bracket
    "series_cutoff": 1e-4,        # r0 of the Taylor seed replacing the coordinate singularity
    "r_max_fallback": 1e3,        # horizon when no linear-comparison bound is computable
    "max_steps": 2_000_000,
    "dense_samples": 1001,        # uniform refinement of each stored profile
    # ball boundary value problems
    "bvp_tol": 1e-8,              # |first_root - R| target
    "scan_points": 64,            # center-value scan grid used to bracket a radius
    "p_floor": 1e-6,              # smallest scanned center value
    "p_ceil_gap": 1e-13,          # 1 - (largest scanned center value)
    "threshold_tol": 1e-2,        # agreement between eigenvalue threshold and the p-scan
    "compare_tol": 1e-9,          # ordering-check tolerance
    # branching Brownian motion / parabolic solver
    "particle_cap": 10_000_000,
    "n_runs": 100_000,
    "fkpp_h": 0.01,
    "fkpp_dt": 5e-5,              # = h^2 / 2 for the default h
    "pde_error_budget": 1e-3,
    "wall_tol": 1e-6,             # field size allowed next to a Dirichlet wall
    "box_tol": 1e-12,             # allowed excursion of the field outside [0, 1]
    # orchestration
    "master_seed": 0x5EED,        # documented default seed: 24301
    "workers": 1,
}
