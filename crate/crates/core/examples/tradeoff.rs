//! Error versus local dimension: copies needed by the Hardy strategy family
//! next to the dimension any near-optimal strategy must use.

use hardy_games::lift::dimension_lower_bound;
use hardy_games::quantum::plan_for_epsilon;

fn main() -> hardy_games::Result<()> {
    println!("epsilon,n,local_dim,closed_form_error,dim_lower_bound");
    for k in 1..=8 {
        let eps = 10f64.powi(-k);
        let plan = plan_for_epsilon(eps)?;
        let bound = dimension_lower_bound(eps)?;
        println!(
            "{eps:e},{},{},{:.3e},{}",
            plan.n, plan.local_dim, plan.closed_form_error, bound.dim_lower_bound
        );
    }
    Ok(())
}
