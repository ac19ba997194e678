#include <doctest.h>

#include "aitherm/spec_io.hpp"

using namespace aitherm;

TEST_CASE("machine spec round-trips") {
  for (const char* name : {"B", "O", "heavy_tail"}) {
    const MachineRef m = resolve_machine(name);
    const std::string text = machine_spec_text(m);
    const MachineRef back = parse_machine_spec(text);
    CHECK(machine_spec_text(back) == text);  // fixed point of serialize(parse(.))
    if (!m.spectrum().is_finite()) continue;
    CHECK(back.spectrum().finite_entries() == m.spectrum().finite_entries());
  }
}

TEST_CASE("finite spectrum spec with string multiplicities") {
  const auto m = parse_machine_spec(
      R"({"kind":"spectrum","name":"s","entries":{"1":"1","3":2}})");
  CHECK(m.spectrum().multiplicity(1) == 1);
  CHECK(m.spectrum().multiplicity(3) == 2);
  CHECK_THROWS_AS(parse_machine_spec(R"({"kind":"wat"})"), SpecParseError);
  CHECK_THROWS_AS(parse_machine_spec("not json"), SpecParseError);
  // a tail_majorant that contradicts the named rule is rejected
  CHECK_THROWS_AS(parse_machine_spec(
                      R"({"kind":"spectrum","rule":{"name":"ones"},)"
                      R"("tail_majorant":{"c":"7","g":"0","d":0,"n0":1}})"),
                  SpecParseError);
}

TEST_CASE("composite specs: round-trip through convolution") {
  const CompositeMachine comp = compose({builtin_B(), builtin_B()});
  const std::string text = machine_spec_text(MachineRef(comp));
  const MachineRef back = parse_machine_spec(text);
  REQUIRE(back.is_composite());
  CHECK(back.spectrum().finite_entries() == comp.spectrum().finite_entries());
  // factors referencing builtin names parse too
  const auto named = parse_machine_spec(R"({"kind":"composite","factors":["B","O"]})");
  CHECK(named.is_composite());
  CHECK(!named.spectrum().is_finite());
}

TEST_CASE("checkpoints restore bit-exactly") {
  const auto U = Machine::universal(0);
  EnumerationState s = enumerate_domain(U, EnumerationState(ScheduleKind::doubling), 5000);
  const std::string text = checkpoint_text(s);
  const EnumerationState restored = parse_checkpoint(text);
  CHECK(checkpoint_text(restored) == text);
  CHECK(restored.budget() == s.budget());
  CHECK(restored.spent() == s.spent());
  CHECK(restored.discovered().size() == s.discovered().size());
  // continuing from the checkpoint equals continuing the original
  const EnumerationState a = enumerate_domain(U, s, 10000);
  const EnumerationState b = enumerate_domain(U, restored, 10000);
  CHECK(checkpoint_text(a) == checkpoint_text(b));
  // split grants reach the same state as one large grant
  EnumerationState split(ScheduleKind::doubling);
  split = enumerate_domain(U, split, 5000);
  split = enumerate_domain(U, split, 10000);
  EnumerationState whole(ScheduleKind::doubling);
  whole = enumerate_domain(U, whole, 15000);
  CHECK(checkpoint_text(split) == checkpoint_text(whole));
}

TEST_CASE("sweep and profile CSV shapes") {
  std::vector<SweepRow> rows;
  rows.push_back({Temperature(BigRational(1, 2)), 'Z', "0.25", "0.5", "0.125", 12});
  const std::string csv = sweep_csv(rows);
  CHECK(csv == "T_num,T_den,quantity,lo,hi,tail_bound,trunc_len\n1,2,Z,0.25,0.5,0.125,12\n");
  CompressionProfile p;
  p.rows = {{1, 2}, {2, std::nullopt}};
  CHECK(profile_csv(p) == "n,h_upper,ratio_num,ratio_den\n1,2,2,1\n2,,,\n");
}

TEST_CASE("resolve_machine dispatches names and files") {
  CHECK(resolve_machine("B").describe().substr(0, 1) == "B");
  CHECK_THROWS_AS(resolve_machine("definitely_not_a_machine"), UnknownMachine);
  const std::string path = "/tmp/aitherm_test_spec.json";
  write_file(path, machine_spec_text(resolve_machine("B")));
  const auto loaded = resolve_machine(path);
  CHECK(loaded.spectrum().finite_entries() == builtin_B().spectrum().finite_entries());
  CHECK_THROWS_AS(load_machine_spec("/tmp/definitely_missing_aitherm.json"), IoError);
}
