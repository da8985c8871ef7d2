package ledger;

public class Ledger {
    private int balance;
    private int entries;

    public static void main(String[] args) {
        Ledger l = new Ledger();
        l.deposit(10);
        l.withdraw(3);
        System.out.println(l.classify(l.balance));
    }

    private int legacyBalance() {
        return balance * 100;
    }

    public void deposit(int amount) {
        if (amount <= 0) {
            throw new IllegalArgumentException("amount");
        }
        int fee = amount / 100;
        balance = balance + amount - fee;
        entries = entries + 1;
    }

    public void withdraw(int amount) {
        if (amount <= 0) {
            throw new IllegalArgumentException("amount");
        }
        int fee = amount / 100;
        balance = balance - amount - fee;
        entries = entries + 1;
    }

    public String classify(int value) {
        String label = "none";
        if (value < 0) {
            label = "negative";
        } else if (value == 0) {
            label = "zero";
        } else if (value < 10) {
            label = "tiny";
        } else if (value < 100) {
            label = "small";
        } else if (value < 1000) {
            label = "medium";
        } else if (value < 10000) {
            label = "large";
        } else if (value < 100000) {
            label = "huge";
        } else if (value < 1000000) {
            label = "vast";
        } else if (value < 10000000) {
            label = "immense";
        } else if (entries > 100 && value > 0) {
            label = "busy";
        }
        return label;
    }
}
