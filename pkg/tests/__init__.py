# EulerPoisson Tests
