//! Which command line reaches each library operation.

/// `(operation, command path)`; the path lists subcommand names, and a
/// trailing `--flag` entry names the flag that selects the operation.
pub const OPERATIONS: &[(&str, &[&str])] = &[
    ("poly_arith", &["bundle", "arith"]),
    ("normal_form", &["bundle", "normal-form"]),
    ("graded_component", &["bundle", "component"]),
    ("fiber_coefficient", &["bundle", "coefficient"]),
    ("monomial_symmetric", &["sym", "monomial"]),
    ("elementary", &["sym", "elementary"]),
    ("to_elementary", &["sym", "to-elementary"]),
    ("sigma_top_coefficient", &["sym", "sigma-top"]),
    ("chern_roots", &["bundle", "roots"]),
    ("chern_class", &["chern", "--basis"]),
    ("sphere_eval", &["chern", "--eval"]),
    ("inverse_series", &["flag", "inverse"]),
    ("grassmannian_presentation", &["flag", "grassmannian"]),
    ("flag_presentation", &["flag", "--dims"]),
    ("projective_bundle", &["bundle", "projective"]),
    ("fiber_integrate", &["bundle", "integrate"]),
    ("sphere_product_ring", &["flag", "spheres"]),
    ("phi_pullback", &["flag", "phi"]),
    ("coupling_class", &["mu", "--class=coupling"]),
    ("mu_class", &["mu", "--class=mu"]),
    ("nu_class", &["mu", "--class=nu"]),
    ("mixed_class", &["mu", "--class=mixed"]),
    ("simplex_integral", &["equi", "simplex"]),
    ("normalized_moment", &["equi", "moment"]),
    ("moment_integral", &["equi", "integrate"]),
    ("mu_of_circle", &["equi", "mu"]),
    ("su_product_integral", &["equi", "su-product"]),
    ("nu1_at_fixed_point", &["equi", "nu1"]),
    ("degree_basis", &["obstruct", "basis"]),
    ("ideal_membership", &["obstruct", "member"]),
    ("whitehead_square_criterion", &["obstruct", "square"]),
    ("whitehead_cube_criterion", &["obstruct", "cube"]),
    ("hard_lefschetz_check", &["obstruct", "hl"]),
    ("paper_suite", &["paper"]),
];

/// Resolves a path against the command tree; `--flag` and `--flag=value`
/// entries must name an argument (and value) of the last command reached.
pub fn resolves(cmd: &clap::Command, path: &[&str]) -> bool {
    let mut cur = cmd;
    for part in path {
        if let Some(flag) = part.strip_prefix("--") {
            let (name, value) = match flag.split_once('=') {
                Some((n, v)) => (n, Some(v)),
                None => (flag, None),
            };
            let Some(arg) = cur.get_arguments().find(|a| a.get_long() == Some(name)) else {
                return false;
            };
            if let Some(v) = value {
                if !arg.get_possible_values().iter().any(|p| p.get_name() == v) {
                    return false;
                }
            }
            continue;
        }
        match cur.find_subcommand(part) {
            Some(sub) => cur = sub,
            None => return false,
        }
    }
    true
}
