public class Calculator {

    int add(int a, int b) {
        return a + b;
    }

    int multiply(int a, int b) { return a * b; }
}
