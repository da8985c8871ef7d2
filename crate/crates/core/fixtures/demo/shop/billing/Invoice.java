package shop.billing;

public class Invoice {
    private int subtotal;
    private int lines;

    // @feature("checkout")
    public void addLine(int price, int quantity) {
        subtotal = subtotal + price * quantity;
        lines = lines + 1;
    }

    // @feature("checkout")
    public int total() {
        return subtotal + TaxTable.taxOn(subtotal);
    }

    // @feature("checkout")
    public int lineCount() {
        return lines;
    }
}
