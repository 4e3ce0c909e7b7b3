//! Reference values for the torsion example, as canonical polynomial strings.

pub const H_ENTRIES: &[(usize, usize, &str)] = &[
    (1, 1, "1"),
    (1, 2, "1"),
    (1, 3, "1"),
    (1, 4, "1"),
    (1, 5, "1"),
    (1, 6, "1"),
    (1, 7, "1"),
    (1, 8, "1"),
    (1, 9, "1"),
    (1, 10, "1"),
    (1, 11, "1"),
    (1, 12, "1"),
    (1, 13, "1"),
    (1, 14, "1"),
    (1, 15, "1"),
    (1, 16, "1"),
    (1, 17, "1"),
    (1, 18, "1"),
    (1, 19, "1"),
    (1, 20, "1"),
    (1, 21, "1"),
    (1, 22, "1"),
    (1, 23, "1"),
    (1, 24, "1"),
    (1, 25, "1"),
    (1, 26, "1"),
    (1, 27, "1"),
    (1, 28, "1"),
    (1, 29, "1"),
    (2, 2, "a3"),
    (2, 3, "-a2"),
    (2, 5, "a3"),
    (2, 6, "-a2"),
    (2, 7, "-a4-a5"),
    (2, 8, "-a2-a3-a4-a5"),
    (2, 14, "a3"),
    (2, 15, "-a2"),
    (2, 16, "-a4-a5"),
    (2, 17, "-a2-a3-a4-a5"),
    (2, 21, "a3"),
    (2, 22, "-a2"),
    (2, 26, "a3"),
    (2, 27, "-a2"),
    (3, 3, "a2+a3"),
    (3, 6, "a2+a3"),
    (3, 8, "a2+a3"),
    (3, 10, "a3"),
    (3, 12, "a3"),
    (3, 15, "a2+a3"),
    (3, 17, "a2+a3"),
    (3, 19, "a3"),
    (3, 22, "a2+a3"),
    (3, 24, "a3"),
    (3, 27, "a2+a3"),
    (3, 29, "a3"),
    (4, 4, "a5"),
    (4, 5, "a5"),
    (4, 6, "a5"),
    (4, 7, "-a3-a4"),
    (4, 8, "-a3-a4"),
    (4, 11, "a5"),
    (4, 12, "a5"),
    (4, 13, "-a6"),
    (4, 14, "-a6"),
    (4, 15, "-a6"),
    (4, 16, "-a3-a4-a5-a6"),
    (4, 17, "-a3-a4-a5-a6"),
    (4, 18, "-a6"),
    (4, 19, "-a6"),
    (5, 5, "a3*a5"),
    (5, 6, "-a2*a5"),
    (5, 7, "(a3+a4)*(a4+a5)"),
    (5, 8, "(a3+a4)*(a2+a3+a4+a5)"),
    (5, 14, "-a3*a6"),
    (5, 15, "a2*a6"),
    (5, 16, "(a3+a4+a5+a6)*(a4+a5)"),
    (5, 17, "(a3+a4+a5+a6)*(a2+a3+a4+a5)"),
    (6, 6, "a5*(a2+a3)"),
    (6, 8, "-(a3+a4)*(a2+a3)"),
    (6, 12, "a3*a5"),
    (6, 15, "-a6*(a2+a3)"),
    (6, 17, "-(a3+a4+a5+a6)*(a2+a3)"),
    (6, 19, "-a3*a6"),
    (7, 7, "a3+a4+a5"),
    (7, 8, "a3+a4+a5"),
    (7, 16, "a3+a4+a5"),
    (7, 17, "a3+a4+a5"),
    (8, 8, "(a3+a4+a5)*(a2+a3)"),
    (8, 17, "(a3+a4+a5)*(a2+a3)"),
    (9, 9, "a2"),
    (9, 10, "a2"),
    (9, 11, "a2"),
    (9, 12, "a2"),
    (9, 18, "a2"),
    (9, 19, "a2"),
    (9, 23, "a2"),
    (9, 24, "a2"),
    (9, 28, "a2"),
    (9, 29, "a2"),
    (10, 10, "a2*a3"),
    (10, 12, "a2*a3"),
    (10, 19, "a2*a3"),
    (10, 24, "a2*a3"),
    (10, 29, "a2*a3"),
    (11, 11, "a2*a5"),
    (11, 12, "a2*a5"),
    (11, 18, "-a2*a6"),
    (11, 19, "-a2*a6"),
    (12, 12, "a2*a3*a5"),
    (12, 19, "-a2*a3*a6"),
    (13, 13, "a5+a6"),
    (13, 14, "a5+a6"),
    (13, 15, "a5+a6"),
    (13, 16, "a5+a6"),
    (13, 17, "a5+a6"),
    (13, 18, "a5+a6"),
    (13, 19, "a5+a6"),
    (13, 25, "a5"),
    (13, 26, "a5"),
    (13, 27, "a5"),
    (13, 28, "a5"),
    (13, 29, "a5"),
    (14, 14, "(a5+a6)*a3"),
    (14, 15, "-(a5+a6)*a2"),
    (14, 16, "-(a5+a6)*(a4+a5)"),
    (14, 17, "-(a5+a6)*(a2+a3+a4+a5)"),
    (14, 26, "a3*a5"),
    (14, 27, "-a2*a5"),
    (15, 15, "(a5+a6)*(a2+a3)"),
    (15, 17, "(a5+a6)*(a2+a3)"),
    (15, 19, "(a5+a6)*a3"),
    (15, 27, "a5*(a2+a3)"),
    (15, 29, "a3*a5"),
    (16, 16, "(a5+a6)*(a3+a4+a5)"),
    (16, 17, "(a5+a6)*(a3+a4+a5)"),
    (17, 17, "(a5+a6)*(a3+a4+a5)*(a2+a3)"),
    (18, 18, "(a5+a6)*a2"),
    (18, 19, "(a5+a6)*a2"),
    (18, 28, "a2*a5"),
    (18, 29, "a2*a5"),
    (19, 19, "(a5+a6)*a2*a3"),
    (19, 29, "a2*a3*a5"),
    (20, 20, "a6"),
    (20, 21, "a6"),
    (20, 22, "a6"),
    (20, 23, "a6"),
    (20, 24, "a6"),
    (20, 25, "a6"),
    (20, 26, "a6"),
    (20, 27, "a6"),
    (20, 28, "a6"),
    (20, 29, "a6"),
    (21, 21, "a3*a6"),
    (21, 22, "-a2*a6"),
    (21, 26, "a3*a6"),
    (21, 27, "-a2*a6"),
    (22, 22, "a6*(a2+a3)"),
    (22, 24, "a3*a6"),
    (22, 27, "a6*(a2+a3)"),
    (22, 29, "a3*a6"),
    (23, 23, "a2*a6"),
    (23, 24, "a2*a6"),
    (23, 28, "a2*a6"),
    (23, 29, "a2*a6"),
    (24, 24, "a2*a3*a6"),
    (24, 29, "a2*a3*a6"),
    (25, 25, "a5*a6"),
    (25, 26, "a5*a6"),
    (25, 27, "a5*a6"),
    (25, 28, "a5*a6"),
    (25, 29, "a5*a6"),
    (26, 26, "a6*a3*a5"),
    (26, 27, "-a6*a2*a5"),
    (27, 27, "a6*a5*(a2+a3)"),
    (27, 29, "a6*a3*a5"),
    (28, 28, "a6*a2*a5"),
    (28, 29, "a6*a2*a5"),
    (29, 29, "a2*a3*a5*a6"),
];

pub const EULER: &str = "a3*(a2+a3)*a6*a2*(a5+a6)*a5";

pub const ROW_29: [&str; 29] = [
    "1/(a6*a2*a5*a3)",
    "-1/((a2+a3)*a6*a5*a3)",
    "-1/(a2*a6*a5*(a2+a3))",
    "-1/((a5+a6)*a2*a5*a3)",
    "1/((a5+a6)*(a2+a3)*a5*a3)",
    "1/(a2*(a5+a6)*a5*(a2+a3))",
    "0",
    "0",
    "-1/(a6*a2*a5*a3)",
    "1/(a6*a2*a5*a3)",
    "1/((a5+a6)*a2*a5*a3)",
    "-1/((a5+a6)*a2*a5*a3)",
    "-1/(a6*(a5+a6)*a2*a3)",
    "1/(a6*(a2+a3)*(a5+a6)*a3)",
    "1/(a2*a6*(a5+a6)*(a2+a3))",
    "0",
    "0",
    "1/(a6*(a5+a6)*a2*a3)",
    "-1/(a6*(a5+a6)*a2*a3)",
    "-1/(a6*a2*a5*a3)",
    "1/((a2+a3)*a6*a5*a3)",
    "1/(a2*a6*a5*(a2+a3))",
    "1/(a6*a2*a5*a3)",
    "-1/(a6*a2*a5*a3)",
    "1/(a6*a2*a5*a3)",
    "-1/((a2+a3)*a6*a5*a3)",
    "-1/(a2*a6*a5*(a2+a3))",
    "-1/(a6*a2*a5*a3)",
    "1/(a6*a2*a5*a3)",
];

pub const P_OVER_EULER: [&str; 29] = [
    "a3*a6*a2*a5*a1*a4*(a3+a4+a5)*a7",
    "-a3*(a2+a3)*a1*a5*(a3+a4)*a6*(a3+a4+a5)*a7",
    "-(a2+a3)*(a1+a2+a3)*a5*(a3+a4)*a2*a6*(a3+a4+a5)*a7",
    "-a3*a2*a1*a5*(a4+a5)*(a5+a6)*(a3+a4+a5)*a7",
    "a3*(a2+a3)*a1*a5*(a3+a4+a5)^2*(a5+a6)*a7",
    "(a2+a3)*(a1+a2+a3)*a5*(a3+a4+a5)^2*a2*(a5+a6)*a7",
    "-(a2+a3)*a1*(a3+a4+a5)^2*(a4+a5)*(a5+a6)*(a3+a4)*a7",
    "(a2+a3)*(a1+a2+a3)*(a3+a4+a5)^2*(a2+a3+a4+a5)*(a5+a6)*(a3+a4)*a7",
    "-a3*a2*(a1+a2)*a5*a4*a6*(a2+a3+a4+a5)*a7",
    "a3*(a1+a2+a3)*a5*(a3+a4)*a2*a6*(a2+a3+a4+a5)*a7",
    "a3*a2*(a1+a2)*a5*(a4+a5)*(a5+a6)*(a2+a3+a4+a5)*a7",
    "-a3*(a1+a2+a3)*a5*(a3+a4+a5)*a2*(a5+a6)*(a2+a3+a4+a5)*a7",
    "-a3*a2*a1*(a4+a5)*(a5+a6)*a6*(a3+a4+a5)*(a5+a6+a7)",
    "a3*(a2+a3)*a1*(a3+a4+a5)^2*(a5+a6)*a6*(a5+a6+a7)",
    "(a2+a3)*(a1+a2+a3)*(a3+a4+a5)^2*a2*(a5+a6)*a6*(a5+a6+a7)",
    "(a2+a3)*a1*(a3+a4+a5)^2*(a4+a5)*(a5+a6)*(a3+a4+a5+a6)*(a5+a6+a7)",
    "-(a2+a3)*(a1+a2+a3)*(a3+a4+a5)^2*(a2+a3+a4+a5)*(a5+a6)*(a3+a4+a5+a6)*(a5+a6+a7)",
    "a3*a2*(a1+a2)*(a4+a5)*(a5+a6)*a6*(a2+a3+a4+a5)*(a5+a6+a7)",
    "-a3*(a1+a2+a3)*(a3+a4+a5)*a2*(a5+a6)*a6*(a2+a3+a4+a5)*(a5+a6+a7)",
    "-a3*a2*a1*a5*a4*a6*(a3+a4+a5+a6)*(a6+a7)",
    "a3*(a2+a3)*a1*a5*(a3+a4)*a6*(a3+a4+a5+a6)*(a6+a7)",
    "(a2+a3)*(a1+a2+a3)*a5*(a3+a4)*a2*a6*(a3+a4+a5+a6)*(a6+a7)",
    "a3*a2*(a1+a2)*a5*a4*a6*(a2+a3+a4+a5+a6)*(a6+a7)",
    "-a3*(a1+a2+a3)*a5*(a3+a4)*a2*a6*(a2+a3+a4+a5+a6)*(a6+a7)",
    "a3*a2*a1*a5*(a4+a5)*a6*(a3+a4+a5+a6)*(a5+a6+a7)",
    "-a3*(a2+a3)*a1*a5*(a3+a4+a5)*a6*(a3+a4+a5+a6)*(a5+a6+a7)",
    "-(a2+a3)*(a1+a2+a3)*a5*(a3+a4+a5)*a2*a6*(a3+a4+a5+a6)*(a5+a6+a7)",
    "-a3*a2*(a1+a2)*a5*(a4+a5)*a6*(a2+a3+a4+a5+a6)*(a5+a6+a7)",
    "a3*(a1+a2+a3)*a5*(a3+a4+a5)*a2*a6*(a2+a3+a4+a5+a6)*(a5+a6+a7)",
];
