#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ttb/assembly.hpp"
#include "ttb/config.hpp"
#include "ttb/coupling.hpp"
#include "ttb/errors.hpp"
#include "ttb/hermite_beam.hpp"
#include "ttb/newmark.hpp"
#include "ttb/reference.hpp"
#include "ttb/sim.hpp"
#include "ttb/track_irregularity.hpp"
#include "ttb/vehicle.hpp"

namespace py = pybind11;
using namespace ttb;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sprung-mass vehicle crossing a two-layer rail-on-bridge structure";
    m.attr("__version__") = "0.1.0";
    m.attr("STANDARD_GRAVITY") = kStandardGravity;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    // shape functions
    py::class_<ShapeEval>(m, "ShapeEval")
        .def_readonly("n", &ShapeEval::n)
        .def_readonly("d1", &ShapeEval::d1)
        .def_readonly("d2", &ShapeEval::d2);
    py::class_<ElementBlocks>(m, "ElementBlocks")
        .def_readonly("nn", &ElementBlocks::nn)
        .def_readonly("bb", &ElementBlocks::bb);
    m.def("shape", &shape, py::arg("xi"), py::arg("l"),
          "Cubic Hermite shape functions and s-derivatives at xi in [0, 1]");
    m.def("element_blocks", &element_blocks, py::arg("l"),
          "Closed-form element integrals of N^T N and N''^T N''");

    // track irregularity
    py::class_<IrregularitySample>(m, "IrregularitySample")
        .def_readonly("r", &IrregularitySample::r)
        .def_readonly("r1", &IrregularitySample::r1)
        .def_readonly("r2", &IrregularitySample::r2);
    py::class_<Profile>(m, "Profile")
        .def_static("smooth", &Profile::smooth)
        .def_static("sinusoid", &Profile::sinusoid, py::arg("amplitude"), py::arg("wavelength"),
                    py::arg("phase") = 0.0)
        .def_static("sampled", &Profile::sampled, py::arg("spacing"), py::arg("ordinates"),
                    py::arg("start") = 0.0)
        .def_static("from_file", &Profile::from_file, py::arg("path"))
        .def("eval", &Profile::eval, py::arg("x"))
        .def_property_readonly("is_smooth", &Profile::is_smooth);

    // vehicle
    py::class_<VehicleParams>(m, "VehicleParams")
        .def(py::init<>())
        .def_readwrite("m_body", &VehicleParams::m_body)
        .def_readwrite("m_wheel", &VehicleParams::m_wheel)
        .def_readwrite("k_susp", &VehicleParams::k_susp)
        .def_readwrite("c_susp", &VehicleParams::c_susp)
        .def_readwrite("v", &VehicleParams::v)
        .def_readwrite("a", &VehicleParams::a)
        .def("validate", &VehicleParams::validate);
    py::class_<WheelLocation>(m, "WheelLocation")
        .def_readonly("x", &WheelLocation::x)
        .def_readonly("j", &WheelLocation::j)
        .def_readonly("s", &WheelLocation::s)
        .def_readonly("xi", &WheelLocation::xi)
        .def_readonly("l", &WheelLocation::l);
    m.def("vehicle_position", &vehicle_position, py::arg("params"), py::arg("t"),
          py::arg("x0") = 0.0);
    m.def("vehicle_speed", &vehicle_speed, py::arg("params"), py::arg("t"));
    m.def("locate_wheel", &locate_wheel, py::arg("x"), py::arg("l"), py::arg("n"));

    // coupling
    py::class_<CouplingBlocks>(m, "CouplingBlocks")
        .def_readonly("m_11", &CouplingBlocks::m_11)
        .def_readonly("c_11", &CouplingBlocks::c_11)
        .def_readonly("k_11", &CouplingBlocks::k_11)
        .def_readonly("f_1", &CouplingBlocks::f_1)
        .def_readonly("m_rr", &CouplingBlocks::m_rr)
        .def_readonly("c_rr", &CouplingBlocks::c_rr)
        .def_readonly("k_rr", &CouplingBlocks::k_rr)
        .def_readonly("c_1r", &CouplingBlocks::c_1r)
        .def_readonly("k_1r", &CouplingBlocks::k_1r)
        .def_readonly("c_r1", &CouplingBlocks::c_r1)
        .def_readonly("k_r1", &CouplingBlocks::k_r1)
        .def_readonly("f_r", &CouplingBlocks::f_r);
    m.def("build_coupling_blocks", &build_coupling_blocks, py::arg("params"), py::arg("loc"),
          py::arg("irr"), py::arg("v_inst"), py::arg("gravity") = kStandardGravity);
    m.def("departed_coupling_blocks", &departed_coupling_blocks, py::arg("params"));

    // assembly
    py::class_<BeamSection>(m, "BeamSection")
        .def(py::init<>())
        .def(py::init([](double rigidity, double mass, double damping) {
                 return BeamSection{rigidity, mass, damping};
             }),
             py::arg("rigidity"), py::arg("mass_per_length"), py::arg("damping_per_length") = 0.0)
        .def_readwrite("rigidity", &BeamSection::rigidity)
        .def_readwrite("mass_per_length", &BeamSection::mass_per_length)
        .def_readwrite("damping_per_length", &BeamSection::damping_per_length);
    py::class_<Mesh>(m, "Mesh")
        .def(py::init<>())
        .def_readwrite("n", &Mesh::n)
        .def_readwrite("l", &Mesh::l)
        .def_readwrite("rail", &Mesh::rail)
        .def_readwrite("bridge", &Mesh::bridge)
        .def_readwrite("k_bed", &Mesh::k_bed)
        .def_readwrite("c_bed", &Mesh::c_bed)
        .def_property_readonly("span", &Mesh::span)
        .def("validate", &Mesh::validate);
    py::class_<GlobalSystem>(m, "GlobalSystem")
        .def_readonly("m", &GlobalSystem::m)
        .def_readonly("c", &GlobalSystem::c)
        .def_readonly("k", &GlobalSystem::k)
        .def_readonly("f", &GlobalSystem::f)
        .def_readonly("dof_map", &GlobalSystem::dof_map)
        .def_readonly("elements", &GlobalSystem::elements)
        .def_readonly("reduced", &GlobalSystem::reduced)
        .def_readonly("has_vehicle", &GlobalSystem::has_vehicle)
        .def("index_of", &GlobalSystem::index_of, py::arg("full_dof"))
        .def_property_readonly("size", &GlobalSystem::size);
    m.def("connectivity", &connectivity, py::arg("n"));
    m.def("assemble_rail_bridge", &assemble_rail_bridge, py::arg("mesh"));
    m.def("apply_constraints", &apply_constraints, py::arg("sys"), py::arg("n"));
    m.def("scatter_vehicle", &scatter_vehicle, py::arg("sys"), py::arg("blocks"), py::arg("loc"));
    m.def("beam_free_dofs", &beam_free_dofs, py::arg("sys"), py::arg("bridge"));
    m.def("beam_block_frequencies_hz", &beam_block_frequencies_hz, py::arg("sys"),
          py::arg("bridge"), py::arg("count"));

    // newmark
    py::class_<NewmarkParams>(m, "NewmarkParams")
        .def(py::init<>())
        .def(py::init([](double beta, double delta, double dt) {
                 return NewmarkParams{beta, delta, dt};
             }),
             py::arg("beta") = 0.25, py::arg("delta") = 0.5, py::arg("dt") = 0.005)
        .def_readwrite("beta", &NewmarkParams::beta)
        .def_readwrite("delta", &NewmarkParams::delta)
        .def_readwrite("dt", &NewmarkParams::dt)
        .def("validate", &NewmarkParams::validate);
    py::class_<State>(m, "State")
        .def(py::init<>())
        .def_readwrite("u", &State::u)
        .def_readwrite("v", &State::v)
        .def_readwrite("acc", &State::acc)
        .def_readwrite("t", &State::t);
    m.def("initial_acceleration", &initial_acceleration, py::arg("m"), py::arg("c"), py::arg("k"),
          py::arg("f"), py::arg("u0"), py::arg("v0"));
    m.def("newmark_step", &newmark_step, py::arg("m"), py::arg("c"), py::arg("k"), py::arg("df"),
          py::arg("state"), py::arg("params"));
    m.def("recompute_acceleration", &recompute_acceleration, py::arg("m"), py::arg("c"),
          py::arg("k"), py::arg("f"), py::arg("u"), py::arg("v"));

    // simulation
    py::enum_<ProbeTarget>(m, "ProbeTarget")
        .value("Bridge", ProbeTarget::Bridge)
        .value("Rail", ProbeTarget::Rail)
        .value("Body", ProbeTarget::Body);
    py::enum_<ProbeQuantity>(m, "ProbeQuantity")
        .value("Displacement", ProbeQuantity::Displacement)
        .value("Velocity", ProbeQuantity::Velocity)
        .value("Acceleration", ProbeQuantity::Acceleration)
        .value("ContactForce", ProbeQuantity::ContactForce);
    py::enum_<AccelUpdate>(m, "AccelUpdate")
        .value("Equilibrium", AccelUpdate::Equilibrium)
        .value("Increment", AccelUpdate::Increment);
    py::class_<Probe>(m, "Probe")
        .def(py::init<>())
        .def(py::init([](ProbeTarget target, ProbeQuantity quantity, double x, bool under_wheel) {
                 return Probe{target, quantity, x, under_wheel};
             }),
             py::arg("target"), py::arg("quantity"), py::arg("x") = 0.0,
             py::arg("under_wheel") = false)
        .def_readwrite("target", &Probe::target)
        .def_readwrite("quantity", &Probe::quantity)
        .def_readwrite("x", &Probe::x)
        .def_readwrite("under_wheel", &Probe::under_wheel)
        .def_property_readonly("name", &Probe::name)
        .def_property_readonly("unit", &Probe::unit);
    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("mesh", &SimConfig::mesh)
        .def_readwrite("vehicle", &SimConfig::vehicle)
        .def_readwrite("profile", &SimConfig::profile)
        .def_readwrite("newmark", &SimConfig::newmark)
        .def_readwrite("probes", &SimConfig::probes)
        .def_readwrite("t_end", &SimConfig::t_end)
        .def_readwrite("tail", &SimConfig::tail)
        .def_readwrite("x0", &SimConfig::x0)
        .def_readwrite("gravity", &SimConfig::gravity)
        .def_readwrite("accel_update", &SimConfig::accel_update)
        .def("crossing_time", &SimConfig::crossing_time)
        .def("duration", &SimConfig::duration)
        .def("validate", &SimConfig::validate);
    py::class_<TimeHistory>(m, "TimeHistory")
        .def_readonly("times", &TimeHistory::times)
        .def_readonly("names", &TimeHistory::names)
        .def_readonly("units", &TimeHistory::units)
        .def_readonly("columns", &TimeHistory::columns)
        .def("column_index", &TimeHistory::column_index, py::arg("name"));
    m.def("default_probes", &default_probes, py::arg("mesh"));
    m.def("run_simulation", &run_simulation, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("probe_value", &probe_value, py::arg("sys"), py::arg("mesh"), py::arg("dofs"),
          py::arg("target"), py::arg("x"));
    m.def("probe_displacement", &probe_displacement, py::arg("state"), py::arg("sys"),
          py::arg("mesh"), py::arg("target"), py::arg("x"));
    m.def("contact_force", &contact_force, py::arg("state"), py::arg("sys"), py::arg("mesh"),
          py::arg("vehicle"), py::arg("loc"), py::arg("irr"), py::arg("v_inst"),
          py::arg("gravity"));
    m.def("benchmark_config", &benchmark_config);
    m.def("load_config", &load_config, py::arg("path"),
          py::arg("overrides") = std::vector<std::string>{});

    // verification references
    auto ref = m.def_submodule("reference", "Closed-form and spectral verification oracles");
    py::class_<reference::BeamModel>(ref, "BeamModel")
        .def(py::init([](double span, double rigidity, double mass, double damping) {
                 return reference::BeamModel{span, rigidity, mass, damping};
             }),
             py::arg("span"), py::arg("rigidity"), py::arg("mass_per_length"),
             py::arg("damping_per_length") = 0.0)
        .def_readwrite("span", &reference::BeamModel::span)
        .def_readwrite("rigidity", &reference::BeamModel::rigidity)
        .def_readwrite("mass_per_length", &reference::BeamModel::mass_per_length)
        .def_readwrite("damping_per_length", &reference::BeamModel::damping_per_length);
    ref.def("natural_frequency_hz", &reference::natural_frequency_hz, py::arg("beam"),
            py::arg("mode"));
    ref.def("static_midspan_deflection", &reference::static_midspan_deflection, py::arg("beam"),
            py::arg("load"));
    py::class_<reference::MovingForceModel>(ref, "MovingForceModel")
        .def(py::init([](reference::BeamModel beam, double force, double speed, int modes) {
                 return reference::MovingForceModel{beam, force, speed, modes};
             }),
             py::arg("beam"), py::arg("force"), py::arg("speed"), py::arg("modes") = 50)
        .def_readwrite("beam", &reference::MovingForceModel::beam)
        .def_readwrite("force", &reference::MovingForceModel::force)
        .def_readwrite("speed", &reference::MovingForceModel::speed)
        .def_readwrite("modes", &reference::MovingForceModel::modes);
    ref.def("moving_force_displacement", &reference::moving_force_displacement, py::arg("model"),
            py::arg("x"), py::arg("t"));
    ref.def("moving_force_acceleration", &reference::moving_force_acceleration, py::arg("model"),
            py::arg("x"), py::arg("t"));
    py::class_<reference::ModalCrossingConfig>(ref, "ModalCrossingConfig")
        .def(py::init<>())
        .def_readwrite("beam", &reference::ModalCrossingConfig::beam)
        .def_readwrite("vehicle", &reference::ModalCrossingConfig::vehicle)
        .def_readwrite("profile", &reference::ModalCrossingConfig::profile)
        .def_readwrite("gravity", &reference::ModalCrossingConfig::gravity)
        .def_readwrite("x0", &reference::ModalCrossingConfig::x0)
        .def_readwrite("modes", &reference::ModalCrossingConfig::modes)
        .def_readwrite("substeps", &reference::ModalCrossingConfig::substeps);
    py::class_<reference::ModalCrossingHistory>(ref, "ModalCrossingHistory")
        .def_readonly("times", &reference::ModalCrossingHistory::times)
        .def_readonly("bridge_disp", &reference::ModalCrossingHistory::bridge_disp)
        .def_readonly("bridge_acc", &reference::ModalCrossingHistory::bridge_acc)
        .def_readonly("body_disp", &reference::ModalCrossingHistory::body_disp)
        .def_readonly("body_acc", &reference::ModalCrossingHistory::body_acc);
    ref.def("modal_crossing_history", &reference::modal_crossing_history, py::arg("config"),
            py::arg("times"), py::arg("x_probe"), py::call_guard<py::gil_scoped_release>());
}
