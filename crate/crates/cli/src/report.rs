//! Report and CSV formatting. Floats are always printed with 17 significant
//! digits so that repeated runs with the same inputs are byte-identical and
//! values survive a round trip through the CSV.

use std::io::Write;

use fiberwise_core::fiber::AngleProfile;
use fiberwise_core::oracle::CrosscheckSummary;
use fiberwise_core::sampling::{InjectivityReport, UnionReport};

pub fn f17(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn write_angle_csv(mut out: impl Write, profile: &AngleProfile) -> std::io::Result<()> {
    writeln!(
        out,
        "fiber_index,x_value,dim_J_A,dim_J_B,angle,in_omega,in_omega_prime"
    )?;
    for r in &profile.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.fiber_index,
            f17(r.coord),
            r.dim_a,
            r.dim_b,
            f17(r.angle),
            flag(r.in_omega),
            flag(r.in_omega_prime)
        )?;
    }
    Ok(())
}

/// Rows: (fiber_index, coord, dim, lower, upper). Zero fibers carry dim 0
/// and zero bounds.
pub fn write_frame_bounds_csv(
    mut out: impl Write,
    rows: &[(usize, f64, usize, f64, f64)],
) -> std::io::Result<()> {
    writeln!(out, "fiber_index,x_value,dim_J,lower,upper")?;
    for &(j, x, dim, lo, hi) in rows {
        writeln!(out, "{},{},{},{},{}", j, f17(x), dim, f17(lo), f17(hi))?;
    }
    Ok(())
}

pub fn write_sampling_csv(
    mut out: impl Write,
    reports: &[(usize, InjectivityReport)],
) -> std::io::Result<()> {
    writeln!(out, "target,fiber_index,x_value,target_dim,mixed_rank,ok")?;
    for (target, report) in reports {
        for f in &report.checked_fibers {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                target,
                f.fiber_index,
                f17(f.coord),
                f.target_dim,
                f.mixed_rank,
                flag(f.mixed_rank == f.target_dim)
            )?;
        }
    }
    Ok(())
}

pub fn write_union_csv(mut out: impl Write, report: &UnionReport) -> std::io::Result<()> {
    writeln!(
        out,
        "delta,theta,fiber_index,x_value,pair_dim,mixed_rank,ok,pair_ess_sup_omega_prime,hypothesis_ok"
    )?;
    for pc in &report.pair_checks {
        match &pc.injectivity {
            Some(inj) => {
                for f in &inj.checked_fibers {
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{}",
                        pc.delta,
                        pc.theta,
                        f.fiber_index,
                        f17(f.coord),
                        f.target_dim,
                        f.mixed_rank,
                        flag(f.mixed_rank == f.target_dim),
                        f17(pc.ess_sup_omega_prime),
                        flag(pc.hypothesis_ok)
                    )?;
                }
            }
            None => {
                // Hypothesis violated: one row records the pair itself.
                writeln!(
                    out,
                    "{},{},,,,,,{},{}",
                    pc.delta,
                    pc.theta,
                    f17(pc.ess_sup_omega_prime),
                    flag(pc.hypothesis_ok)
                )?;
            }
        }
    }
    Ok(())
}

pub fn write_crosscheck_csv(mut out: impl Write, summary: &CrosscheckSummary) -> std::io::Result<()> {
    writeln!(
        out,
        "kind,instance,n,m,r_a,r_b,pipeline,oracle,deviation,method_deviation,route_deviation"
    )?;
    for r in &summary.angle_records {
        writeln!(
            out,
            "angle,{},{},{},{},{},{},{},{},{},{}",
            r.index,
            r.order,
            r.coset_count,
            r.generators_a,
            r.generators_b,
            f17(r.pipeline_angle),
            f17(r.oracle_angle),
            f17(r.deviation),
            f17(r.method_deviation),
            f17(r.route_deviation)
        )?;
    }
    for r in &summary.injectivity_records {
        writeln!(
            out,
            "injectivity,{},{},{},{},{},{},{},{},0,0",
            r.index,
            r.order,
            r.coset_count,
            r.measuring_generators,
            r.target_generators,
            flag(r.pipeline_injective),
            flag(r.oracle_injective),
            flag(!r.agree)
        )?;
    }
    Ok(())
}
