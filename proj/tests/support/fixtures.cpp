#include "support/fixtures.hpp"

namespace dianet::fixtures {

AB make_ab() {
  AB f;
  f.o1 = f.sigma.add_observable("o1");
  f.o2 = f.sigma.add_observable("o2");
  f.o3 = f.sigma.add_observable("o3");
  f.u1 = f.sigma.add_unobservable("u1");
  f.f = f.sigma.add_unobservable("f", true);

  f.A.name = "A";
  for (const char* s : {"a0", "a1", "a2", "a3"}) f.A.add_state(s);
  f.A.initial = 0;
  f.A.add_transition(0, f.f, 1);
  f.A.add_transition(0, f.f, 2);
  f.A.add_transition(1, f.o2, 3);
  f.A.add_transition(1, f.o3, 1);
  f.A.add_transition(3, f.o3, 1);
  f.A.add_transition(2, f.o3, 2);

  f.B.name = "B";
  for (const char* s : {"b0", "b1", "b2", "b3"}) f.B.add_state(s);
  f.B.initial = 0;
  f.B.add_transition(0, f.f, 1);
  f.B.add_transition(1, f.o1, 1);
  f.B.add_transition(0, f.u1, 2);
  f.B.add_transition(1, f.o2, 3);
  f.B.add_transition(3, f.o1, 3);
  f.B.add_transition(2, f.o3, 2);

  f.spec = SystemSpec{"N1", f.sigma, {f.A, f.B}};
  return f;
}

CD make_cd() {
  CD f;
  f.o1 = f.sigma.add_observable("o1");
  f.o2 = f.sigma.add_observable("o2");
  f.o3 = f.sigma.add_observable("o3");
  f.o4 = f.sigma.add_observable("o4");
  f.o5 = f.sigma.add_observable("o5");
  f.u2 = f.sigma.add_unobservable("u2");
  f.u3 = f.sigma.add_unobservable("u3");
  f.f = f.sigma.add_unobservable("f", true);

  f.C.name = "C";
  for (const char* s : {"c0", "c1", "c2", "c3", "c4"}) f.C.add_state(s);
  f.C.initial = 0;
  f.C.add_transition(0, f.o1, 1);
  f.C.add_transition(0, f.o2, 2);
  f.C.add_transition(2, f.o3, 2);
  f.C.add_transition(1, f.f, 3);
  f.C.add_transition(3, f.o3, 3);
  f.C.add_transition(2, f.u2, 4);
  f.C.add_transition(4, f.o4, 4);

  f.D.name = "D";
  for (const char* s : {"d0", "d1", "d2", "d3", "d4"}) f.D.add_state(s);
  f.D.initial = 0;
  f.D.add_transition(0, f.o2, 1);
  f.D.add_transition(0, f.o1, 2);
  f.D.add_transition(2, f.o3, 2);
  f.D.add_transition(1, f.f, 3);
  f.D.add_transition(3, f.o3, 3);
  f.D.add_transition(2, f.u3, 4);
  f.D.add_transition(4, f.o5, 4);

  f.spec = SystemSpec{"N2", f.sigma, {f.C, f.D}};
  return f;
}

SystemSpec make_inconclusive() {
  SystemSpec spec;
  spec.name = "INC";
  ActionId a = spec.sigma.add_observable("a");
  ActionId u1 = spec.sigma.add_unobservable("u1");
  ActionId f = spec.sigma.add_unobservable("f", true);

  Automaton X;
  X.name = "X";
  for (const char* s : {"x0", "x1", "x2"}) X.add_state(s);
  X.initial = 0;
  X.add_transition(0, f, 1);
  X.add_transition(0, u1, 2);
  X.add_transition(1, a, 1);
  X.add_transition(2, a, 2);

  Automaton Y;
  Y.name = "Y";
  for (const char* s : {"y0", "y1"}) Y.add_state(s);
  Y.initial = 0;
  Y.add_transition(0, f, 1);
  Y.add_transition(1, a, 1);

  spec.components = {X, Y};
  return spec;
}

}  // namespace dianet::fixtures
