use std::f64::consts::PI;

use acoustophoresis::dynamics::{simulate, DynamicsParams, Scene, Termination, Trajectory};
use acoustophoresis::geometry::MappingCoefficients;
use acoustophoresis::radforce::Particle;
use acoustophoresis::scatter::BoundaryKind;
use acoustophoresis::transform::euler_to_rotation;
use acoustophoresis::wavefield::{Medium, Source, TransducerArray};
use nalgebra::Vector3;

fn five_element_array(v0: f64) -> TransducerArray {
    let positions = vec![[0.0, 0.0, 0.0], [0.01, 0.0, 0.0], [-0.01, 0.0, 0.0], [0.0, 0.01, 0.0], [0.0, -0.01, 0.0]];
    TransducerArray {
        radius: 0.005,
        v0,
        phase_delay: vec![0.0; 5],
        amplitude_ratio: vec![1.0; 5],
        positions,
        interdistance: 0.02,
    }
}

fn ellipsoid_scene(v0: f64, position: Vector3<f64>) -> Scene {
    let medium = Medium::air();
    let shape = MappingCoefficients::new(vec![0.002, 0.0, 0.0004]).unwrap();
    Scene {
        particle: Particle::new(shape, BoundaryKind::SoundHard, &medium, 40e3, None).unwrap(),
        medium,
        frequency: 40e3,
        source: Source::Array(five_element_array(v0)),
        initial_position: position,
        initial_orientation: euler_to_rotation([PI / 6.0, 0.0, 0.0]).unwrap(),
        force_radius: None,
        drag_radius: None,
    }
}

fn run(scene: &Scene, dt: f64) -> Trajectory {
    simulate(scene, &DynamicsParams::new(15.0, dt, 0.1)).unwrap()
}

#[test]
fn ellipsoid_above_array_settles_early() {
    let traj = run(&ellipsoid_scene(1.5, Vector3::new(0.002, 0.0, 0.0)), 1e-4);
    assert_eq!(traj.termination, Termination::Converged);
    assert!(traj.final_state.time < 0.1);
    assert!(traj.records.len() > 10);
    assert!(traj.records.windows(2).all(|w| w[1].time > w[0].time));
}

#[test]
fn simulation_is_deterministic() {
    let scene = ellipsoid_scene(1.5, Vector3::new(0.002, 0.0, 0.0));
    let a = run(&scene, 1e-4);
    let b = run(&scene, 1e-4);
    assert_eq!(a.records, b.records);
    assert_eq!(a.termination, b.termination);
}

#[test]
fn halving_the_step_barely_moves_the_pose() {
    let scene = ellipsoid_scene(1.5, Vector3::new(0.002, 0.0, 0.0));
    let coarse = run(&scene, 1e-4);
    let fine = run(&scene, 5e-5);
    // Compare where both runs exist: the coarse run's final time.
    let t = coarse.final_state.time.min(fine.final_state.time);
    let at = |traj: &Trajectory| *traj.records.iter().rev().find(|r| r.time <= t * (1.0 + 1e-9)).unwrap();
    let (c, f) = (at(&coarse), at(&fine));
    assert!((c.time - f.time).abs() < 1e-12, "{} vs {}", c.time, f.time);
    assert!((c.position - f.position).norm() < 0.01 * c.position.norm());
    for i in 0..3 {
        assert!((c.angles[i] - f.angles[i]).abs() < 0.01 * c.angles[0].abs());
    }
}

#[test]
fn falling_into_the_guard_band_stops_the_run() {
    // Starts 0.1 µm above the band; one 1 ms step of free fall drops ~5 µm.
    let scene = ellipsoid_scene(0.0, Vector3::new(0.0, 0.0, -0.0099999));
    let traj = run(&scene, 1e-3);
    assert_eq!(traj.termination, Termination::BelowMinInterdistance);
    assert!(traj.final_state.position.z < -0.01);
}

#[test]
fn starting_inside_the_guard_band_is_refused() {
    let scene = ellipsoid_scene(1.5, Vector3::new(0.0, 0.0, -0.0101));
    let err = simulate(&scene, &DynamicsParams::new(15.0, 1e-4, 0.1)).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("far-field guard"), "{err}");
}

#[test]
fn source_collision_names_the_step() {
    let mut scene = ellipsoid_scene(1.5, Vector3::new(0.002, 0.0, 0.0));
    scene.force_radius = Some(0.05);
    let err = simulate(&scene, &DynamicsParams::new(15.0, 1e-4, 0.1)).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("step 1"), "{err}");
}
